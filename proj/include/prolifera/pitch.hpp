#pragma once

// Mod-n pitch-class arithmetic, series representation and the four serial
// transformations (prime, inversion, retrograde, retrograde inversion).
//
// Numbering convention: the first note of a base series is 0 and every other
// note is its distance from that note in tone-fractions, so a series is a
// permutation of {0..n-1} written as a sequence.  Inversion is defined
// relative to that convention and therefore only accepts series starting
// at 0; normalize_to_zero() produces the transposition that does.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace prolifera {

using PitchClass = int;

/// Number of divisions of the octave (12 = semitones, 24 = quarter-tones...).
class Modulus {
public:
    explicit Modulus(int n) : n_(n) {
        if (n < 1)
            throw std::invalid_argument("Modulus: n must be >= 1, got " + std::to_string(n));
    }
    int size() const { return n_; }
    friend bool operator==(const Modulus&, const Modulus&) = default;

private:
    int n_;
};

inline int mod_reduce(long long value, int n) {
    long long r = value % n;
    if (r < 0)
        r += n;
    return static_cast<int>(r);
}

enum class Kind { P, I, R, RI };

inline constexpr const char* kind_name(Kind k) {
    switch (k) {
    case Kind::P: return "P";
    case Kind::I: return "I";
    case Kind::R: return "R";
    case Kind::RI: return "RI";
    }
    return "?";
}

inline std::optional<Kind> kind_from_name(std::string_view name) {
    if (name == "P") return Kind::P;
    if (name == "I") return Kind::I;
    if (name == "R") return Kind::R;
    if (name == "RI") return Kind::RI;
    return std::nullopt;
}

/// One serial transformation: a kind plus a transposition t in [0, n).
struct TransformSpec {
    Kind kind;
    int t = 0;
};

/// An ordering of all n pitch classes; the unit of musical material.
class Series {
public:
    explicit Series(std::vector<PitchClass> notes) : notes_(std::move(notes)) {
        const int n = static_cast<int>(notes_.size());
        if (n < 1)
            throw std::invalid_argument("Series: must contain at least one note");
        std::vector<bool> seen(notes_.size(), false);
        for (PitchClass x : notes_) {
            if (x < 0 || x >= n)
                throw std::invalid_argument("Series: pitch class " + std::to_string(x) +
                                            " out of range for n=" + std::to_string(n));
            if (seen[static_cast<std::size_t>(x)])
                throw std::invalid_argument("Series: pitch class " + std::to_string(x) +
                                            " repeated");
            seen[static_cast<std::size_t>(x)] = true;
        }
    }

    int size() const { return static_cast<int>(notes_.size()); }
    Modulus modulus() const { return Modulus(size()); }
    PitchClass at(int position) const { return notes_.at(static_cast<std::size_t>(position)); }
    const std::vector<PitchClass>& notes() const { return notes_; }

    friend bool operator==(const Series&, const Series&) = default;
    friend auto operator<=>(const Series& a, const Series& b) { return a.notes_ <=> b.notes_; }

private:
    std::vector<PitchClass> notes_;
};

inline void check_transposition(int t, int n) {
    if (t < 0 || t >= n)
        throw std::invalid_argument("transposition t=" + std::to_string(t) +
                                    " out of range [0, " + std::to_string(n) + ")");
}

/// Transposition of s whose first note is 0; interval content is unchanged.
inline Series normalize_to_zero(const Series& s) {
    const int n = s.size();
    const int shift = s.at(0);
    std::vector<PitchClass> out;
    out.reserve(static_cast<std::size_t>(n));
    for (PitchClass x : s.notes())
        out.push_back(mod_reduce(x - shift, n));
    return Series(std::move(out));
}

// Applies kind + transposition with the fixed conventions:
//   P : x -> x + t
//   R : reverse, then x -> x + t
//   I : x -> -x + t          (series must start at 0)
//   RI: x -> -x + t, then reverse   ("first inversion and then retrogradation")
inline Series apply_transform(const TransformSpec& spec, const Series& s) {
    const int n = s.size();
    check_transposition(spec.t, n);
    const bool inverts = spec.kind == Kind::I || spec.kind == Kind::RI;
    if (inverts && s.at(0) != 0)
        throw std::invalid_argument(
            std::string(kind_name(spec.kind)) +
            ": inversion is defined for series starting at 0; call normalize_to_zero first");

    std::vector<PitchClass> out;
    out.reserve(static_cast<std::size_t>(n));
    for (PitchClass x : s.notes())
        out.push_back(mod_reduce((inverts ? -x : x) + spec.t, n));
    if (spec.kind == Kind::R || spec.kind == Kind::RI)
        std::reverse(out.begin(), out.end());
    return Series(std::move(out));
}

}  // namespace prolifera
