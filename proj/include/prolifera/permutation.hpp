#pragma once

// Proliferating permutations: the bijection taking each note of a base
// series to the note in the same position of its transformed series, its
// disjoint-cycle factorization, order and orbit.

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prolifera/pitch.hpp"

namespace prolifera {

/// Bijection on {0..n-1}; image(x) is the pitch class x maps to.
class Permutation {
public:
    explicit Permutation(std::vector<int> image) : image_(std::move(image)) {
        const int n = static_cast<int>(image_.size());
        if (n < 1)
            throw std::invalid_argument("Permutation: empty image");
        std::vector<bool> seen(image_.size(), false);
        for (int y : image_) {
            if (y < 0 || y >= n || seen[static_cast<std::size_t>(y)])
                throw std::invalid_argument("Permutation: image is not a bijection");
            seen[static_cast<std::size_t>(y)] = true;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> image(static_cast<std::size_t>(n));
        std::iota(image.begin(), image.end(), 0);
        return Permutation(std::move(image));
    }

    int size() const { return static_cast<int>(image_.size()); }
    int operator()(int x) const { return image_.at(static_cast<std::size_t>(x)); }
    const std::vector<int>& image() const { return image_; }

    bool is_identity() const {
        for (int x = 0; x < size(); ++x)
            if (image_[static_cast<std::size_t>(x)] != x)
                return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<int> inv(image_.size());
        for (int x = 0; x < size(); ++x)
            inv[static_cast<std::size_t>(image_[static_cast<std::size_t>(x)])] = x;
        return Permutation(std::move(inv));
    }

    /// Composition: (a * b)(x) = a(b(x)).
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        if (a.size() != b.size())
            throw std::invalid_argument("Permutation: size mismatch in composition");
        std::vector<int> image(a.image_.size());
        for (int x = 0; x < a.size(); ++x)
            image[static_cast<std::size_t>(x)] = a(b(x));
        return Permutation(std::move(image));
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> image_;
};

/// Multiset of cycle lengths, stored sorted ascending; sums to n.
using CycleStructure = std::vector<int>;

/// Disjoint cycles in canonical presentation: each cycle rotated to start at
/// its minimum element, cycles sorted by that minimum.  central_cycle indexes
/// the cycle holding the center-position note of the generating series (odd n).
struct CycleDecomposition {
    std::vector<std::vector<int>> cycles;
    std::optional<std::size_t> central_cycle;
};

inline CycleDecomposition cycle_decomposition(const Permutation& p) {
    const int n = p.size();
    CycleDecomposition dec;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int start = 0; start < n; ++start) {
        if (seen[static_cast<std::size_t>(start)])
            continue;
        std::vector<int> cycle;
        for (int x = start; !seen[static_cast<std::size_t>(x)]; x = p(x)) {
            seen[static_cast<std::size_t>(x)] = true;
            cycle.push_back(x);
        }
        dec.cycles.push_back(std::move(cycle));
    }
    return dec;
}

/// Decomposition with the cycle containing central_note marked.
inline CycleDecomposition cycle_decomposition(const Permutation& p, PitchClass central_note) {
    CycleDecomposition dec = cycle_decomposition(p);
    for (std::size_t i = 0; i < dec.cycles.size(); ++i) {
        if (std::find(dec.cycles[i].begin(), dec.cycles[i].end(), central_note) !=
            dec.cycles[i].end()) {
            dec.central_cycle = i;
            break;
        }
    }
    return dec;
}

inline CycleStructure structure_of(const CycleDecomposition& dec) {
    CycleStructure lengths;
    lengths.reserve(dec.cycles.size());
    for (const auto& c : dec.cycles)
        lengths.push_back(static_cast<int>(c.size()));
    std::sort(lengths.begin(), lengths.end());
    return lengths;
}

inline CycleStructure structure_of(const Permutation& p) {
    return structure_of(cycle_decomposition(p));
}

inline unsigned long long lcm_of(const CycleStructure& lengths) {
    unsigned long long result = 1;
    for (int len : lengths)
        result = std::lcm(result, static_cast<unsigned long long>(len));
    return result;
}

/// Order of p: lcm of its cycle lengths (= number of distinct proliferations).
inline unsigned long long order_of(const Permutation& p) {
    return lcm_of(structure_of(p));
}

/// PP mapping s1[i] -> s2[i] for every position i.
inline Permutation pp_from_pair(const Series& s1, const Series& s2) {
    if (s1.size() != s2.size())
        throw std::invalid_argument("pp_from_pair: series have different moduli (" +
                                    std::to_string(s1.size()) + " vs " +
                                    std::to_string(s2.size()) + ")");
    std::vector<int> image(static_cast<std::size_t>(s1.size()));
    for (int i = 0; i < s1.size(); ++i)
        image[static_cast<std::size_t>(s1.at(i))] = s2.at(i);
    return Permutation(std::move(image));
}

inline Permutation pp_from_transform(const Series& s, const TransformSpec& spec) {
    return pp_from_pair(s, apply_transform(spec, s));
}

/// Elementwise application: note x becomes p(x).
inline Series apply_to_series(const Permutation& p, const Series& s) {
    if (p.size() != s.size())
        throw std::invalid_argument("apply_to_series: modulus mismatch");
    std::vector<PitchClass> out;
    out.reserve(s.notes().size());
    for (PitchClass x : s.notes())
        out.push_back(p(x));
    return Series(std::move(out));
}

/// The proliferations [s, p s, p^2 s, ...]; stops before s repeats, so the
/// length equals order_of(p).
inline std::vector<Series> orbit(const Series& s, const Permutation& p) {
    if (p.size() != s.size())
        throw std::invalid_argument("orbit: modulus mismatch");
    std::vector<Series> result;
    result.push_back(s);
    for (Series current = apply_to_series(p, s); current != s;
         current = apply_to_series(p, current))
        result.push_back(current);
    return result;
}

}  // namespace prolifera
