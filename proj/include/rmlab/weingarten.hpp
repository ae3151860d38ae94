#pragma once

// Unitary Weingarten function and exact inverse moments of the standard
// complex Wishart matrix P = A*A (A with i.i.d. (x+iy)/sqrt(2) entries).

#include "rmlab/combinatorics.hpp"
#include "rmlab/rational.hpp"

#include <cstdint>

namespace rmlab {

/// Largest moment order accepted by exact_inverse_moment; the sum runs
/// over all c! permutations.
inline constexpr int kMaxExactMomentOrder = 8;

struct WeingartenValue {
    Rational value;
};

/// Cycle type of pi in E[Tr_pi(P^{-1})]; c is its size.
struct MomentOrder {
    Partition pi_type;
    int c() const { return pi_type.size(); }
};

/// Wg(sigma, z) = (1/q!) sum_eta chi^eta(e) chi^eta(sigma) / prod_{(i,j) in eta} (z + j - i).
///
/// Depends on sigma only through its cycle type. Throws DomainError when
/// z + j - i vanishes for some cell of some partition of q (the message
/// names the partition and cell), ParameterError when q exceeds 12.
WeingartenValue weingarten(const Partition& sigma_type, const Rational& z);

/// Tr_sigma(I_n) = n^{#cycles}.
BigInt tr_sigma_identity(const Partition& sigma_type, std::int64_t n);

/// E[Tr_pi(P^{-1})] for the n x n standard complex Wishart P with m rows:
///
///   (-1)^c sum_{sigma in S_c} Wg(pi sigma^{-1}; n - m) Tr_sigma(I_n)
///
/// evaluated by direct enumeration of S_c. Requires m >= n >= 1 and
/// c < m - n + 1 (ConditionViolated otherwise).
Rational exact_inverse_moment(const MomentOrder& order, std::int64_t m, std::int64_t n);

} // namespace rmlab
