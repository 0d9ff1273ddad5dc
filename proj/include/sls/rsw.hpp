#pragma once

#include <cstdint>
#include <limits>
#include <utility>

#include "sls/numtheory.hpp"

namespace sls {

// Number of sequential squarings.
using TimeBound = uint64_t;
inline constexpr TimeBound kMaxTimeBound = std::numeric_limits<int64_t>::max();

struct RswPublicParams {
  RsaModulus modulus;
  TimeBound time_bound;

  RswPublicParams(RsaModulus m, TimeBound t);
};

struct RswOutput {
  GroupElement y;
};

std::pair<RswPublicParams, TrapdoorSecret> rsw_setup(const SecurityConfig& cfg,
                                                     TimeBound time_bound,
                                                     RandomSource& rng);

GroupElement rsw_sample(const RswPublicParams& pp, RandomSource& rng);

// x^(2^T) mod N by exactly T modular squarings, one after the other.
RswOutput rsw_eval(const RswPublicParams& pp, const GroupElement& x);

// x^(2^T) mod N as x^v with v = 2^T mod phi(N).
RswOutput rsw_td_eval(const RswPublicParams& pp, const TrapdoorSecret& sp,
                      const GroupElement& x);

// The bare squaring loop behind rsw_eval.
mpz_class repeated_squaring(const mpz_class& x, const mpz_class& n, TimeBound steps);

}  // namespace sls
