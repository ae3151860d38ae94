#include "rmlab/weingarten.hpp"

#include "rmlab/errors.hpp"

#include <algorithm>
#include <map>

namespace rmlab {

namespace {

// prod over cells (i, j) of eta of (z + j - i), 1-based cells.
Rational content_product(const Partition& eta, const Rational& z) {
    Rational prod(1);
    for (int i = 1; i <= eta.length(); ++i) {
        for (int j = 1; j <= eta[static_cast<std::size_t>(i - 1)]; ++j) {
            Rational factor = z + Rational(j - i);
            if (factor.is_zero())
                throw DomainError("Weingarten pole: z + j - i = 0 at cell (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") of partition " + eta.to_string() +
                                  " for z = " + z.to_string());
            prod *= factor;
        }
    }
    return prod;
}

} // namespace

WeingartenValue weingarten(const Partition& sigma_type, const Rational& z) {
    const int q = sigma_type.size();
    if (q < 1 || q > kMaxPartitionSize)
        throw ParameterError("Weingarten order q = " + std::to_string(q) + " outside [1, " +
                             std::to_string(kMaxPartitionSize) + "]");
    const auto shapes = partitions(q);
    // Reject any pole before summing so the error does not depend on
    // which term happens to vanish first.
    std::vector<Rational> denominators;
    denominators.reserve(shapes.size());
    for (const auto& eta : shapes) denominators.push_back(content_product(eta, z));

    Rational sum(0);
    for (std::size_t k = 0; k < shapes.size(); ++k) {
        const std::int64_t chi = character(shapes[k], sigma_type);
        if (chi == 0) continue;
        sum += Rational(dimension(shapes[k]) * chi) / denominators[k];
    }
    return {sum / Rational(static_cast<std::int64_t>(factorial(q)))};
}

BigInt tr_sigma_identity(const Partition& sigma_type, std::int64_t n) {
    if (n < 1) throw ParameterError("matrix dimension must be positive");
    BigInt out = 1;
    for (int i = 0; i < sigma_type.length(); ++i) out *= n;
    return out;
}

Rational exact_inverse_moment(const MomentOrder& order, std::int64_t m, std::int64_t n) {
    const int c = order.c();
    if (n < 1 || m < n)
        throw ParameterError("exact inverse moment needs m >= n >= 1 (got m = " + std::to_string(m) +
                             ", n = " + std::to_string(n) + ")");
    if (c < 1 || c > kMaxExactMomentOrder)
        throw ParameterError("moment order c = " + std::to_string(c) + " outside [1, " +
                             std::to_string(kMaxExactMomentOrder) + "]");
    if (c >= m - n + 1)
        throw ConditionViolated("c = " + std::to_string(c) + " is not below m - n + 1 = " +
                                std::to_string(m - n + 1) + "; the inverse moment is infinite");

    const Rational z(n - m);
    const Perm pi = Perm::with_cycle_type(order.pi_type);
    std::map<Partition, Rational> wg_by_class;

    std::vector<int> images(static_cast<std::size_t>(c));
    for (int i = 0; i < c; ++i) images[static_cast<std::size_t>(i)] = i;

    Rational sum(0);
    do {
        const Perm sigma(images);
        const Partition cls = cycle_type(pi.compose(sigma.inverse()));
        auto it = wg_by_class.find(cls);
        if (it == wg_by_class.end()) it = wg_by_class.emplace(cls, weingarten(cls, z).value).first;
        sum += it->second * Rational(tr_sigma_identity(cycle_type(sigma), n), BigInt(1));
    } while (std::next_permutation(images.begin(), images.end()));

    return (c % 2 == 0) ? sum : -sum;
}

} // namespace rmlab
