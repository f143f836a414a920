#include "massforge/local_invariants.hpp"

namespace massforge {

namespace {

Integer int_pow(const Integer& base, long e) {
  Integer r = 1;
  for (long i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

Rat unit_density(const Integer& q, long n) {
  if (q < 2) throw DomainError("unit density needs a residue field size >= 2");
  Rat out = 1;
  for (long i = 1; i <= n; ++i) {
    Integer qi = int_pow(q, i);
    out *= Rat(qi - 1, qi);
  }
  return out;
}

Rat lambda_v(const LocalOrderProfile& P, long n) {
  if (P.q < 2) throw DomainError("profile at '" + P.place + "' has no residue size");
  if (P.kappa_size < 1 || P.kappa_units < 1)
    throw DomainError("profile at '" + P.place + "' has bad residue data");
  Rat density = unit_density(P.q, n);
  Rat kappa_ratio(P.kappa_units, P.kappa_size);
  return Rat(P.disc_abs) * density / kappa_ratio;
}

Rat lambda_max(const Integer& q, long d, long n) {
  if (d < 1 || n < 1 || n % d != 0)
    throw DomainError("lambda_max: local index must divide the degree");
  Rat out = 1;
  for (long i = 1; i <= n - 1; ++i) {
    if (i % d == 0) continue;
    out *= Rat(int_pow(q, i) - 1);
  }
  return out;
}

LocalOrderProfile maximal_profile(std::string place, const Integer& q, long d,
                                  long n) {
  if (d < 1 || n < 1 || n % d != 0)
    throw DomainError("maximal profile: local index must divide the degree");
  long m = n / d;
  LocalOrderProfile P;
  P.place = std::move(place);
  P.q = q;
  P.d = d;
  P.disc_abs = int_pow(q, m * m * d * (d - 1) / 2);
  Integer Q = int_pow(q, d);
  P.kappa_size = int_pow(Q, m * m);
  Integer units = 1;
  Integer Qm = int_pow(Q, m);
  Integer Qi = 1;
  for (long i = 0; i < m; ++i) {
    units *= (Qm - Qi);
    Qi *= Q;
  }
  P.kappa_units = units;
  P.norm_index = 1;
  P.normalizer_index = Integer(d);
  if (n == 2 && d == 2) P.eichler = -1;
  return P;
}

Rat local_unit_index(const LocalOrderProfile& R,
                     const LocalOrderProfile& Rmax) {
  if (R.q != Rmax.q)
    throw DomainError("unit index: profiles live at different places");
  Rat disc_ratio = Rat(R.disc_abs, Rmax.disc_abs);
  Rat top(Rmax.kappa_units, Rmax.kappa_size);
  Rat bot(R.kappa_units, R.kappa_size);
  return disc_ratio * top / bot;
}

int eichler_from_kappa(const KappaInfo& info) {
  switch (info.cls) {
    case KappaClass::SplitPair:
      return 1;
    case KappaClass::FieldExt:
      return -1;
    case KappaClass::BaseField:
      return 0;
    case KappaClass::Matrix:
      throw DomainError("residue symbol undefined for a split maximal order");
    case KappaClass::Other:
      throw DomainError("residue symbol undefined for this residue algebra");
  }
  throw DomainError("residue symbol: bad classification");
}

}  // namespace massforge
