#pragma once

// Integer partitions, permutations and irreducible characters of the
// symmetric group S_q. Everything here is exact integer arithmetic.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace rmlab {

/// Largest q accepted by the partition and character routines.
inline constexpr int kMaxPartitionSize = 12;

/// Integer partition stored as non-increasing positive parts.
class Partition {
public:
    Partition() = default;
    /// Parts may be given in any order; they are sorted non-increasing.
    /// Throws ParameterError on a zero or negative part.
    explicit Partition(std::vector<int> parts);
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    const std::vector<int>& parts() const { return parts_; }
    int size() const { return q_; }                                    // q
    int length() const { return static_cast<int>(parts_.size()); }     // p(eta)
    int operator[](std::size_t i) const { return parts_[i]; }

    /// Multiplicity a_j of part j.
    int multiplicity(int part) const;

    /// Parses "3,2,1" (whitespace tolerated).
    static Partition parse(const std::string& text);
    std::string to_string() const;

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

private:
    std::vector<int> parts_;
    int q_ = 0;
};

/// Permutation of {0, ..., q-1} in one-line notation: image[i] = sigma(i).
class Perm {
public:
    Perm() = default;
    /// Throws ParameterError unless `images` is a bijection on [0, q).
    explicit Perm(std::vector<int> images);
    /// Same, from the 1-based one-line notation used in textbooks.
    static Perm from_one_based(std::span<const int> images);
    static Perm identity(int q);
    /// Canonical representative of a cycle type: consecutive blocks
    /// (0 1 ... l1-1)(l1 ... l1+l2-1)...
    static Perm with_cycle_type(const Partition& type);

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& images() const { return images_; }

    Perm inverse() const;
    /// (*this * other)(i) = this(other(i)).
    Perm compose(const Perm& other) const;
    int cycle_count() const;

    friend bool operator==(const Perm&, const Perm&) = default;

private:
    std::vector<int> images_;
};

/// All partitions of q in reverse lexicographic order, e.g. for q = 4:
/// (4), (3,1), (2,2), (2,1,1), (1,1,1,1). Requires 1 <= q <= 12.
std::vector<Partition> partitions(int q);

Partition cycle_type(const Perm& p);

std::uint64_t factorial(int q);

/// z_mu = prod_j j^{a_j} a_j!
std::uint64_t centralizer_order(const Partition& mu);

/// |class mu| = q! / z_mu.
std::uint64_t conjugacy_class_size(const Partition& mu);

/// chi^eta(mu) by the Murnaghan-Nakayama rule. Memoized, thread-safe.
std::int64_t character(const Partition& eta, const Partition& mu);

/// chi^eta(e), computed as character(eta, 1^q).
std::int64_t dimension(const Partition& eta);

/// Independent route to chi^eta(e): q! / prod of hook lengths.
std::int64_t dimension_by_hooks(const Partition& eta);

} // namespace rmlab
