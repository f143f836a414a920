#include "massforge/oracle.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "massforge/finite_algebra.hpp"
#include "massforge/gf.hpp"
#include "massforge/orders.hpp"
#include "massforge/parallel.hpp"

namespace massforge {
namespace oracle {

namespace {

Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

Integer floor_rat(const Rat& r) {
  Integer n = rat_num(r), d = rat_den(r);
  Integer q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) --q;
  return q;
}

// Square completion of the positive definite form x G x^T:
// Q(x) = sum_i d[i] * (x_i + sum_{j>i} u[i][j] x_j)^2.
struct Ldl {
  std::array<Rat, 4> d;
  std::array<std::array<Rat, 4>, 4> u;
};

Ldl ldl_decompose(const ZMat& G) {
  if (G.size() != 4 || G[0].size() != 4)
    throw DomainError("norm enumeration expects a 4x4 Gram matrix");
  Rat w[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) w[i][j] = G[i][j];
  Ldl L;
  for (int i = 0; i < 4; ++i) {
    L.d[i] = w[i][i];
    if (L.d[i] <= 0)
      throw DomainError("norm form is not positive definite");
    for (int j = i + 1; j < 4; ++j) L.u[i][j] = w[i][j] / L.d[i];
    for (int j = i + 1; j < 4; ++j)
      for (int k = j; k < 4; ++k) w[j][k] -= L.u[i][j] * w[i][k];
  }
  return L;
}

// Offset of level i given the already chosen higher coordinates.
Rat level_center(const Ldl& L, int i, const std::array<Integer, 4>& xs) {
  Rat c{0};
  for (int j = i + 1; j < 4; ++j) c += L.u[i][j] * Rat(xs[j]);
  return c;
}

// Loose integer half-width for (x + c)^2 <= r2; every candidate is verified
// exactly before use so slack is harmless.
Integer half_width(const Rat& r2) {
  Integer s = isqrt_floor(rat_num(r2) * rat_den(r2)) / rat_den(r2);
  return s + 1;
}

// Depth-first over levels i..0; fn(xs) -> keep_going.  Returns false when fn
// asked to stop.
template <class Fn>
bool walk(const Ldl& L, int i, const Rat& rem, std::array<Integer, 4>& xs,
          Fn&& fn) {
  Rat c = level_center(L, i, xs);
  if (i == 0) {
    // Exact bottom level: d0 (x + c)^2 = rem.
    auto s = try_exact_sqrt(rem / L.d[0]);
    if (!s) return true;
    for (int sign = -1; sign <= 1; sign += 2) {
      Rat x = (sign < 0 ? -*s : *s) - c;
      if (rat_den(x) != 1) continue;
      xs[0] = rat_num(x);
      if (!fn(xs)) return false;
      if (*s == 0) break;
    }
    return true;
  }
  Rat r2 = rem / L.d[i];
  Integer w = half_width(r2);
  Integer base = floor_rat(-c);
  for (Integer x = base - w; x <= base + w; ++x) {
    Rat term = L.d[i] * (Rat(x) + c) * (Rat(x) + c);
    if (term > rem) continue;
    xs[i] = x;
    if (!walk(L, i - 1, rem - term, xs, fn)) return false;
  }
  return true;
}

std::vector<std::pair<Integer, Rat>> top_candidates(const Ldl& L,
                                                    const Rat& target) {
  std::vector<std::pair<Integer, Rat>> out;
  Rat r2 = target / L.d[3];
  Integer w = half_width(r2);
  for (Integer x = -w; x <= w; ++x) {
    Rat term = L.d[3] * Rat(x) * Rat(x);
    if (term > target) continue;
    out.push_back({x, target - term});
  }
  return out;
}

std::vector<std::array<Integer, 4>> vectors_impl(const ZMat& G,
                                                 const Rat& target,
                                                 bool parallel) {
  std::vector<std::array<Integer, 4>> out;
  if (target < 0) return out;
  Ldl L = ldl_decompose(G);
  auto tops = top_candidates(L, target);
  auto task = [&](std::size_t k) {
    std::vector<std::array<Integer, 4>> local;
    std::array<Integer, 4> xs{};
    xs[3] = tops[k].first;
    walk(L, 2, tops[k].second, xs, [&](const std::array<Integer, 4>& v) {
      local.push_back(v);
      return true;
    });
    return local;
  };
  using Chunk = std::vector<std::array<Integer, 4>>;
  auto chunks = parallel
                    ? ordered_parallel_map<Chunk>(tops.size(), task)
                    : ordered_serial_map<Chunk>(tops.size(), task);
  for (auto& ch : chunks)
    out.insert(out.end(), ch.begin(), ch.end());
  return out;
}

// Element of the algebra from a coefficient row over a lattice basis.
ZVec combine(const ZQ& A, const std::array<Integer, 4>& v, const ZMat& B) {
  VecT<ZDom> row{Rat(v[0]), Rat(v[1]), Rat(v[2]), Rat(v[3])};
  return vec_mat(A.D, row, B);
}

bool coords_integral(const ZDom& D, const VecT<ZDom>& c) {
  for (const auto& e : c)
    if (!D.is_integral(e)) return false;
  return true;
}

// Reduced norm of the ideal I relative to the lattice `base`:
// sqrt of the generalized index [base : I].
Rat rel_norm(const ZDom& D, const ZMat& base, const ZMat& I) {
  Rat idx = rat_abs(det(D, mat_mul(D, I, mat_inv(D, base))));
  auto s = try_exact_sqrt(idx);
  if (!s)
    throw DomainError("lattice index " + rat_string(idx) +
                      " is not a perfect square");
  return *s;
}

std::vector<Integer> disc_primes(const ZQ& A, const ZMat& O) {
  Rat rd = reduced_disc(A, O);
  if (rat_den(rd) != 1)
    throw DomainError("order has a non-integral reduced discriminant");
  auto fac = factor_integer(rat_num(rd));
  std::vector<Integer> out;
  for (const auto& [p, e] : fac.powers) out.push_back(p);
  return out;
}

// All products of the given primes with exponents <= 2, ascending.
std::vector<Integer> smooth_targets(const std::vector<Integer>& primes) {
  std::vector<Integer> out{1};
  for (const auto& p : primes) {
    std::vector<Integer> next;
    for (const auto& t : out)
      for (int e = 0; e <= 2; ++e) {
        Integer v = t;
        for (int k = 0; k < e; ++k) v *= p;
        next.push_back(v);
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void normalize_primitive(std::array<Integer, 4>& v) {
  Integer g = 0;
  for (const auto& c : v) g = boost::multiprecision::gcd(g, c);
  if (g > 1)
    for (auto& c : v) c /= g;
  for (const auto& c : v) {
    if (c == 0) continue;
    if (c < 0)
      for (auto& w : v) w = -w;
    break;
  }
}

bool is_primitive(const std::array<Integer, 4>& v) {
  Integer g = 0;
  for (const auto& c : v) g = boost::multiprecision::gcd(g, c);
  return g == 1;
}

// Does g conjugate the row span of B1 into the row span of B2?
bool conjugates_into(const ZQ& A, const ZVec& g, const ZMat& B1,
                     const ZMat& B2inv) {
  ZVec gi = A.inverse(g);
  for (const auto& row : B1) {
    ZVec x = A.mul(A.mul(g, row), gi);
    if (!coords_integral(A.D, coords_in(A.D, B2inv, x))) return false;
  }
  return true;
}

// The p-neighbors of the right ideal I: sublattices J with pI < J < I whose
// quotient I/J is a simple module for the right action of the base order.
std::vector<ZMat> neighbors(const ZQ& A, const ZMat& R, const ZMat& I,
                            const Integer& p) {
  const ZDom& D = A.D;
  ZMat Iinv = mat_inv(D, I);
  if (p > (Integer(1) << 20)) throw DomainError("neighbor prime too large");
  GFPtr F = GF::prime(static_cast<std::int64_t>(p));
  std::array<gfmat::Mat, 4> gens;
  for (int m = 0; m < 4; ++m) {
    ZMat M = mat_mul(D, mat_mul(D, I, A.right_mul(R[m])), Iinv);
    gens[m] = gfmat::make(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (!D.is_integral(M[i][j]))
          throw DomainError("lattice is not a right module over the order");
        gens[m][i][j] = F->from_int(rat_num(M[i][j]));
      }
  }
  std::vector<ZMat> out;
  std::int64_t q = F->q;
  // 2-dimensional subspaces of the residue module, in reduced echelon form.
  for (int c1 = 0; c1 < 4; ++c1)
    for (int c2 = c1 + 1; c2 < 4; ++c2) {
      std::vector<int> free1, free2;
      for (int j = c1 + 1; j < 4; ++j)
        if (j != c2) free1.push_back(j);
      for (int j = c2 + 1; j < 4; ++j) free2.push_back(j);
      std::size_t nf = free1.size() + free2.size();
      std::int64_t count = 1;
      for (std::size_t k = 0; k < nf; ++k) count *= q;
      for (std::int64_t code = 0; code < count; ++code) {
        gfmat::Mat rows = gfmat::make(2, 4);
        rows[0][c1] = F->one();
        rows[1][c2] = F->one();
        std::int64_t rest = code;
        for (int j : free1) {
          rows[0][j] = static_cast<GF::El>(rest % q);
          rest /= q;
        }
        for (int j : free2) {
          rows[1][j] = static_cast<GF::El>(rest % q);
          rest /= q;
        }
        bool stable = true;
        for (int m = 0; m < 4 && stable; ++m)
          for (int r = 0; r < 2 && stable; ++r) {
            auto img = gfmat::vec_mul(*F, rows[r], gens[m]);
            if (!gfmat::in_row_span(*F, rows, img)) stable = false;
          }
        if (!stable) continue;
        ZMat J = mat_scale(D, Rat(p), I);
        for (int r = 0; r < 2; ++r) {
          VecT<ZDom> lift(4, D.fzero());
          for (int j = 0; j < 4; ++j) lift[j] = Rat(Integer(rows[r][j]));
          J.push_back(vec_mat(D, lift, I));
        }
        out.push_back(lattice_canon(D, J));
      }
    }
  if (Integer(static_cast<long>(out.size())) != p + 1)
    throw DomainError("expected " + int_string(p + 1) +
                      " neighbors at a split prime, found " +
                      std::to_string(out.size()));
  return out;
}

// Counts of lattice elements of small norm in the norm-normalized ideal;
// cheap isometry invariant used to avoid full isomorphism tests.
std::array<long, 3> theta_key(const ZQ& A, const ZMat& I, const Rat& nrm) {
  ZMat G = norm_gram(A, I);
  for (auto& row : G)
    for (auto& e : row) e = e / nrm;
  std::array<long, 3> key{};
  for (int k = 1; k <= 3; ++k)
    key[static_cast<std::size_t>(k - 1)] =
        static_cast<long>(vectors_of_norm(G, Rat(k)).size());
  return key;
}

}  // namespace

ZMat norm_gram(const ZQ& A, const ZMat& B) {
  if (B.size() != 4)
    throw DomainError("norm Gram expects a rank-4 lattice basis");
  ZMat G = make_mat(A.D, 4, 4);
  for (int l = 0; l < 4; ++l)
    for (int m = 0; m < 4; ++m) G[l][m] = A.mul(B[l], A.conj(B[m]))[0];
  return G;
}

std::vector<std::array<Integer, 4>> vectors_of_norm(const ZMat& G,
                                                    const Rat& target) {
  return vectors_impl(G, target, true);
}

std::vector<std::array<Integer, 4>> vectors_of_norm_serial(const ZMat& G,
                                                           const Rat& target) {
  return vectors_impl(G, target, false);
}

bool has_vector_of_norm(const ZMat& G, const Rat& target) {
  if (target < 0) return false;
  Ldl L = ldl_decompose(G);
  std::array<Integer, 4> xs{};
  bool found = false;
  walk(L, 3, target, xs, [&](const std::array<Integer, 4>&) {
    found = true;
    return false;
  });
  return found;
}

Integer enumerate_units(const ZQ& A, const ZMat& B) {
  return Integer(
      static_cast<long>(vectors_of_norm(norm_gram(A, B), Rat(1)).size()));
}

Integer unit_index(const ZQ& A, const ZMat& B) {
  Integer n = enumerate_units(A, B);
  if (n == 0 || n % 2 != 0)
    throw DomainError("unit count " + int_string(n) + " is not a positive even number");
  return n / 2;
}

bool ideal_isomorphic(const ZQ& A, const ZMat& I, const ZMat& J) {
  const ZDom& D = A.D;
  Rat ratio = rat_abs(det(D, mat_mul(D, J, mat_inv(D, I))));
  auto t = try_exact_sqrt(ratio);
  if (!t) return false;
  ZMat L = left_transporter(A, J, I);
  return has_vector_of_norm(norm_gram(A, L), *t);
}

Rat mass_of_classes(const std::vector<IdealClassRecord>& classes) {
  Rat sum{0};
  for (const auto& rec : classes) sum += Rat(1) / Rat(rec.unit_index);
  return sum;
}

std::vector<IdealClassRecord> right_ideal_classes(const ZQ& A, const ZMat& R,
                                                  const Rat& mass_target,
                                                  const ClassSetOptions& opts) {
  const ZDom& D = A.D;
  std::string why;
  if (!verify_order(A, R, &why))
    throw DomainError("base lattice is not an order: " + why);
  if (mass_target <= 0) throw DomainError("mass target must be positive");
  ZMat base = lattice_canon(D, R);

  Rat rd = reduced_disc(A, base);
  if (rat_den(rd) != 1)
    throw DomainError("order has a non-integral reduced discriminant");
  Integer disc = rat_num(rd);
  Integer p;
  if (opts.neighbor_prime) {
    p = *opts.neighbor_prime;
    if (p < 2 || !is_prime_u64(p))
      throw DomainError("neighbor prime " + int_string(p) + " is not prime");
    if (disc % p == 0)
      throw DomainError("neighbor prime " + int_string(p) +
                        " divides the discriminant " + int_string(disc));
  } else {
    p = 2;
    while (disc % p == 0 || !is_prime_u64(p)) ++p;
  }

  std::vector<IdealClassRecord> records;
  std::vector<std::array<long, 3>> keys;
  Rat sum{0};
  auto add_record = [&](const ZMat& ideal, const Rat& nrm,
                        const std::array<long, 3>& key) {
    IdealClassRecord rec;
    rec.ideal = ideal;
    rec.left_order_basis = lattice_canon(D, left_order(A, ideal));
    rec.unit_index = unit_index(A, rec.left_order_basis);
    rec.norm = nrm;
    records.push_back(std::move(rec));
    keys.push_back(key);
    sum += Rat(1) / Rat(records.back().unit_index);
    if (sum > mass_target)
      throw DomainError("enumerated mass " + rat_string(sum) +
                        " exceeds the certified target " +
                        rat_string(mass_target));
  };

  add_record(base, Rat(1), theta_key(A, base, Rat(1)));
  std::deque<std::size_t> frontier{0};
  long expansions = 0;
  while (sum != mass_target && !frontier.empty()) {
    if (++expansions > opts.max_expansions)
      throw DomainError("neighbor walk exceeded the expansion cap");
    std::size_t at = frontier.front();
    frontier.pop_front();
    ZMat I = records[at].ideal;
    Rat base_norm = records[at].norm;
    for (const auto& J : neighbors(A, base, I, p)) {
      Rat nrm = base_norm * Rat(p);
      auto key = theta_key(A, J, nrm);
      bool known = false;
      for (std::size_t k = 0; k < records.size() && !known; ++k) {
        if (keys[k] != key) continue;
        if (!try_exact_sqrt(rat_abs(
                det(D, mat_mul(D, J, mat_inv(D, records[k].ideal))))))
          continue;
        known = ideal_isomorphic(A, records[k].ideal, J);
      }
      if (known) continue;
      if (static_cast<long>(records.size()) >= opts.max_classes)
        throw DomainError("class cap exceeded before the mass target was met");
      add_record(J, nrm, key);
      frontier.push_back(records.size() - 1);
      if (sum == mass_target) break;
    }
  }
  if (sum != mass_target)
    throw DomainError("ideal class search exhausted at mass " +
                      rat_string(sum) + ", certified target " +
                      rat_string(mass_target));
  return records;
}

Rat mass_by_enumeration(const ZQ& A, const ZMat& R, const Rat& mass_target,
                        const ClassSetOptions& opts) {
  return mass_of_classes(right_ideal_classes(A, R, mass_target, opts));
}

bool orders_conjugate(const ZQ& A, const ZMat& O1, const ZMat& O2) {
  const ZDom& D = A.D;
  ZMat C1 = lattice_canon(D, O1);
  ZMat C2 = lattice_canon(D, O2);
  if (lattice_eq(D, C1, C2)) return true;
  if (reduced_disc(A, C1) != reduced_disc(A, C2)) return false;
  if (enumerate_units(A, C1) != enumerate_units(A, C2)) return false;
  ZMat M = lattice_canon(D, lattice_mul(A, C2, C1));
  Rat nM = rel_norm(D, C1, M);
  ZMat G = norm_gram(A, M);
  ZMat C2inv = mat_inv(D, C2);
  for (const auto& t : smooth_targets(disc_primes(A, C1))) {
    for (const auto& v : vectors_of_norm(G, nM * Rat(t))) {
      ZVec g = combine(A, v, M);
      if (A.D.is_zero(A.nrd(g))) continue;
      if (conjugates_into(A, g, C1, C2inv)) return true;
    }
  }
  return false;
}

Integer normalizer_order(const ZQ& A, const ZMat& O) {
  const ZDom& D = A.D;
  ZMat B = lattice_canon(D, O);
  ZMat Binv = mat_inv(D, B);
  ZMat G = norm_gram(A, B);
  std::set<std::array<Integer, 4>> found;
  for (const auto& t : smooth_targets(disc_primes(A, B))) {
    for (auto v : vectors_of_norm(G, Rat(t))) {
      if (!is_primitive(v)) continue;
      normalize_primitive(v);
      if (found.count(v)) continue;
      ZVec g = combine(A, v, B);
      if (conjugates_into(A, g, B, Binv)) found.insert(v);
    }
  }
  // The classes found must form a group modulo scalars; a product landing
  // outside means the norm bound was too small, which we refuse to hide.
  std::vector<ZVec> reps;
  for (const auto& v : found) reps.push_back(combine(A, v, B));
  for (const auto& x : reps)
    for (const auto& y : reps) {
      VecT<ZDom> c = coords_in(D, Binv, A.mul(x, y));
      Integer lcm{1};
      for (const auto& e : c)
        lcm = boost::multiprecision::lcm(lcm, rat_den(e));
      std::array<Integer, 4> w;
      for (int i = 0; i < 4; ++i) w[static_cast<std::size_t>(i)] =
          rat_num(c[static_cast<std::size_t>(i)] * Rat(lcm));
      normalize_primitive(w);
      if (!found.count(w))
        throw DomainError("normalizer search did not close under products");
    }
  return Integer(static_cast<long>(found.size()));
}

TypeSummary types_by_enumeration(const ZQ& A,
                                 const std::vector<IdealClassRecord>& classes) {
  TypeSummary out;
  std::vector<ZMat> rep_orders;
  for (const auto& rec : classes) {
    bool matched = false;
    for (std::size_t k = 0; k < rep_orders.size(); ++k) {
      if (orders_conjugate(A, rec.left_order_basis, rep_orders[k])) {
        out.types[k].classes_in_type += 1;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    rep_orders.push_back(rec.left_order_basis);
    TypeRecord t;
    t.order_basis = rec.left_order_basis;
    t.classes_in_type = 1;
    t.normalizer_order = normalizer_order(A, rec.left_order_basis);
    if (t.normalizer_order < rec.unit_index)
      throw DomainError("normalizer order " + int_string(t.normalizer_order) +
                        " smaller than the unit index " +
                        int_string(rec.unit_index));
    out.types.push_back(std::move(t));
  }
  for (const auto& t : out.types)
    out.type_mass += Rat(1) / Rat(t.normalizer_order);
  return out;
}

}  // namespace oracle
}  // namespace massforge
