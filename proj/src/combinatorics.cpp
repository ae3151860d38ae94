#include "rmlab/combinatorics.hpp"

#include "rmlab/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

namespace rmlab {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_) {
        if (p <= 0) throw ParameterError("partition parts must be positive");
        q_ += p;
    }
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

int Partition::multiplicity(int part) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), part));
}

Partition Partition::parse(const std::string& text) {
    std::vector<int> parts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto first = item.find_first_not_of(" \t");
        auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) throw ParameterError("empty part in partition '" + text + "'");
        item = item.substr(first, last - first + 1);
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw ParameterError("malformed partition '" + text + "'");
        }
        if (used != item.size()) throw ParameterError("malformed partition '" + text + "'");
        parts.push_back(value);
    }
    if (parts.empty()) throw ParameterError("empty partition");
    return Partition(std::move(parts));
}

std::string Partition::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(parts_[i]);
    }
    return out + ")";
}

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (int v : images_) {
        if (v < 0 || v >= static_cast<int>(images_.size()) || seen[static_cast<std::size_t>(v)])
            throw ParameterError("images do not form a permutation");
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

Perm Perm::from_one_based(std::span<const int> images) {
    std::vector<int> zero_based(images.begin(), images.end());
    for (int& v : zero_based) --v;
    return Perm(std::move(zero_based));
}

Perm Perm::identity(int q) {
    std::vector<int> images(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) images[static_cast<std::size_t>(i)] = i;
    return Perm(std::move(images));
}

Perm Perm::with_cycle_type(const Partition& type) {
    std::vector<int> images(static_cast<std::size_t>(type.size()));
    int start = 0;
    for (int len : type.parts()) {
        for (int k = 0; k < len; ++k)
            images[static_cast<std::size_t>(start + k)] = start + (k + 1) % len;
        start += len;
    }
    return Perm(std::move(images));
}

Perm Perm::inverse() const {
    std::vector<int> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
        inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
    Perm out;
    out.images_ = std::move(inv);
    return out;
}

Perm Perm::compose(const Perm& other) const {
    if (other.size() != size()) throw ParameterError("composing permutations of different degree");
    Perm out;
    out.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
        out.images_[i] = images_[static_cast<std::size_t>(other.images_[i])];
    return out;
}

int Perm::cycle_count() const { return cycle_type(*this).length(); }

Partition cycle_type(const Perm& p) {
    std::vector<char> visited(static_cast<std::size_t>(p.size()), 0);
    std::vector<int> lengths;
    for (int start = 0; start < p.size(); ++start) {
        if (visited[static_cast<std::size_t>(start)]) continue;
        int len = 0;
        for (int i = start; !visited[static_cast<std::size_t>(i)]; i = p(i)) {
            visited[static_cast<std::size_t>(i)] = 1;
            ++len;
        }
        lengths.push_back(len);
    }
    return Partition(std::move(lengths));
}

namespace {

void check_q(int q) {
    if (q < 1 || q > kMaxPartitionSize)
        throw ParameterError("q = " + std::to_string(q) + " outside supported range [1, " +
                             std::to_string(kMaxPartitionSize) + "]");
}

void extend_partitions(int remaining, int max_part, std::vector<int>& prefix,
                       std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(prefix);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        prefix.push_back(part);
        extend_partitions(remaining - part, part, prefix, out);
        prefix.pop_back();
    }
}

// Beta-set (first-column hook lengths) of a partition with exactly
// `beads` entries, padded with zero parts.
std::vector<int> beta_set(const std::vector<int>& parts, int beads) {
    std::vector<int> beta(static_cast<std::size_t>(beads));
    for (int i = 0; i < beads; ++i) {
        int part = i < static_cast<int>(parts.size()) ? parts[static_cast<std::size_t>(i)] : 0;
        beta[static_cast<std::size_t>(i)] = part + (beads - 1 - i);
    }
    return beta;
}

std::vector<int> from_beta_set(std::vector<int> beta) {
    std::sort(beta.begin(), beta.end(), std::greater<>());
    const int beads = static_cast<int>(beta.size());
    std::vector<int> parts;
    for (int i = 0; i < beads; ++i) {
        int part = beta[static_cast<std::size_t>(i)] - (beads - 1 - i);
        if (part > 0) parts.push_back(part);
    }
    return parts;
}

using CharacterKey = std::pair<std::vector<int>, std::vector<int>>;

std::mutex character_mutex;
std::map<CharacterKey, std::int64_t>& character_cache() {
    static std::map<CharacterKey, std::int64_t> cache;
    return cache;
}

// Murnaghan-Nakayama: strip a rim hook of length mu[0] in every possible
// way, recurse on the rest of mu. On the beta-set a rim hook of length r
// is a bead moved from b to an empty position b - r; its leg length is
// the number of beads strictly between.
std::int64_t murnaghan_nakayama(const std::vector<int>& shape, const std::vector<int>& classes) {
    if (classes.empty()) return shape.empty() ? 1 : 0;

    CharacterKey key{shape, classes};
    {
        std::lock_guard lock(character_mutex);
        auto& cache = character_cache();
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }

    const int r = classes.front();
    const std::vector<int> rest(classes.begin() + 1, classes.end());
    const int beads = static_cast<int>(shape.size());
    const std::vector<int> beta = beta_set(shape, beads);

    std::int64_t total = 0;
    for (std::size_t b = 0; b < beta.size(); ++b) {
        const int target = beta[b] - r;
        if (target < 0) continue;
        if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
        int between = 0;
        for (int v : beta)
            if (v > target && v < beta[b]) ++between;
        std::vector<int> moved = beta;
        moved[b] = target;
        const std::int64_t sub = murnaghan_nakayama(from_beta_set(moved), rest);
        total += (between % 2 == 0) ? sub : -sub;
    }

    std::lock_guard lock(character_mutex);
    character_cache().emplace(std::move(key), total);
    return total;
}

} // namespace

std::vector<Partition> partitions(int q) {
    check_q(q);
    std::vector<Partition> out;
    std::vector<int> prefix;
    extend_partitions(q, q, prefix, out);
    return out;
}

std::uint64_t factorial(int q) {
    if (q < 0 || q > 20) throw ParameterError("factorial argument out of range");
    std::uint64_t f = 1;
    for (int i = 2; i <= q; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

std::uint64_t centralizer_order(const Partition& mu) {
    std::uint64_t z = 1;
    for (int j = 1; j <= mu.size(); ++j) {
        const int a = mu.multiplicity(j);
        for (int k = 0; k < a; ++k) z *= static_cast<std::uint64_t>(j);
        z *= factorial(a);
    }
    return z;
}

std::uint64_t conjugacy_class_size(const Partition& mu) {
    return factorial(mu.size()) / centralizer_order(mu);
}

std::int64_t character(const Partition& eta, const Partition& mu) {
    check_q(eta.size());
    if (eta.size() != mu.size())
        throw ParameterError("character: " + eta.to_string() + " and " + mu.to_string() +
                             " partition different integers");
    return murnaghan_nakayama(eta.parts(), mu.parts());
}

std::int64_t dimension(const Partition& eta) {
    check_q(eta.size());
    return character(eta, Partition(std::vector<int>(static_cast<std::size_t>(eta.size()), 1)));
}

std::int64_t dimension_by_hooks(const Partition& eta) {
    check_q(eta.size());
    const auto& parts = eta.parts();
    std::uint64_t hooks = 1;
    for (int i = 0; i < eta.length(); ++i) {
        for (int j = 0; j < parts[static_cast<std::size_t>(i)]; ++j) {
            const int arm = parts[static_cast<std::size_t>(i)] - j - 1;
            int leg = 0;
            for (int k = i + 1; k < eta.length() && parts[static_cast<std::size_t>(k)] > j; ++k) ++leg;
            hooks *= static_cast<std::uint64_t>(arm + leg + 1);
        }
    }
    return static_cast<std::int64_t>(factorial(eta.size()) / hooks);
}

} // namespace rmlab
