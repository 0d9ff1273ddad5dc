#include "sls/rsw.hpp"

#include "sls/error.hpp"

namespace sls {

RswPublicParams::RswPublicParams(RsaModulus m, TimeBound t)
    : modulus(std::move(m)), time_bound(t) {
  if (t > kMaxTimeBound) {
    throw Error(ErrorCode::kInvalidArgument, "time bound exceeds 2^63 - 1");
  }
}

std::pair<RswPublicParams, TrapdoorSecret> rsw_setup(const SecurityConfig& cfg,
                                                     TimeBound time_bound,
                                                     RandomSource& rng) {
  auto [modulus, sp] = setup_modulus(cfg, rng);
  return {RswPublicParams(std::move(modulus), time_bound), std::move(sp)};
}

GroupElement rsw_sample(const RswPublicParams& pp, RandomSource& rng) {
  return sample_element(pp.modulus, rng);
}

mpz_class repeated_squaring(const mpz_class& x, const mpz_class& n, TimeBound steps) {
  mpz_class y = x;
  mpz_class tmp;
  for (TimeBound i = 0; i < steps; ++i) {
    mpz_mul(tmp.get_mpz_t(), y.get_mpz_t(), y.get_mpz_t());
    mpz_mod(y.get_mpz_t(), tmp.get_mpz_t(), n.get_mpz_t());
  }
  return y;
}

RswOutput rsw_eval(const RswPublicParams& pp, const GroupElement& x) {
  if (!(x.modulus() == pp.modulus)) {
    throw Error(ErrorCode::kModulusMismatch, "input is bound to a different modulus");
  }
  return {GroupElement(repeated_squaring(x.value(), pp.modulus.n(), pp.time_bound),
                       pp.modulus)};
}

RswOutput rsw_td_eval(const RswPublicParams& pp, const TrapdoorSecret& sp,
                      const GroupElement& x) {
  if (!sp.matches(pp.modulus)) {
    throw Error(ErrorCode::kTrapdoorMismatch, "p * q != N");
  }
  if (!(x.modulus() == pp.modulus)) {
    throw Error(ErrorCode::kModulusMismatch, "input is bound to a different modulus");
  }
  const mpz_class two = 2;
  const mpz_class t = static_cast<unsigned long>(pp.time_bound);
  mpz_class v;
  mpz_powm(v.get_mpz_t(), two.get_mpz_t(), t.get_mpz_t(), sp.phi.get_mpz_t());
  mpz_class y;
  mpz_powm(y.get_mpz_t(), x.value().get_mpz_t(), v.get_mpz_t(),
           pp.modulus.n().get_mpz_t());
  return {GroupElement(std::move(y), pp.modulus)};
}

}  // namespace sls
