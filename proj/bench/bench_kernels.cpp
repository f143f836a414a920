// Times the serial short-vector enumeration against the threaded variant on
// quaternion norm lattices and checks that the two agree entry for entry.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "massforge/field_context.hpp"
#include "massforge/oracle.hpp"
#include "massforge/orders.hpp"
#include "massforge/parallel.hpp"

using namespace massforge;
using namespace massforge::oracle;

namespace {

template <class F>
double time_ms(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

struct Case {
  std::string label;
  ZMat gram;
  long target;
};

}  // namespace

int main() {
  ZDom D = FieldContext::rationals({}).zdom();

  std::vector<Case> cases;

  {
    ZQ A(D, Rat(-1), Rat(-1));
    ZMat hurwitz = {{Rat(1), Rat(0), Rat(0), Rat(0)},
                    {Rat(0), Rat(1), Rat(0), Rat(0)},
                    {Rat(0), Rat(0), Rat(1), Rat(0)},
                    {Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1, 2)}};
    cases.push_back({"(-1,-1) order 1,i,j,k", norm_gram(A, standard_order(A)), 5040});
    cases.push_back({"(-1,-1) maximal order", norm_gram(A, hurwitz), 5040});
  }
  {
    ZQ A(D, Rat(-1), Rat(-11));
    cases.push_back({"(-1,-11) order 1,i,j,k", norm_gram(A, standard_order(A)), 9240});
  }
  {
    ZQ A(D, Rat(-2), Rat(-5));
    cases.push_back({"(-2,-5) order 1,i,j,k", norm_gram(A, standard_order(A)), 27720});
  }

  std::printf("threads: %ld\n", static_cast<long>(thread_cap()));
  std::printf("%-24s %10s %8s %12s %12s %8s\n", "lattice", "norm", "count",
              "serial ms", "threaded ms", "speedup");

  for (const auto& c : cases) {
    std::vector<std::array<Integer, 4>> serial, threaded;
    double ts = time_ms([&] { serial = vectors_of_norm_serial(c.gram, Rat(c.target)); });
    double tp = time_ms([&] { threaded = vectors_of_norm(c.gram, Rat(c.target)); });
    if (serial != threaded) {
      std::printf("MISMATCH on %s\n", c.label.c_str());
      return 1;
    }
    std::printf("%-24s %10ld %8zu %12.2f %12.2f %7.2fx\n", c.label.c_str(),
                c.target, serial.size(), ts, tp, ts / (tp > 0 ? tp : 1e-9));
  }
  return 0;
}
