#pragma once

// Inductive enumeration of the cycle structures reachable through
// retrogradation combined with a generalized transposition (GT).
//
// A GT stands in for a regular transposition while notes are added one at a
// time; a regular transposition t induces gcd(n,t) cycles of length
// n/gcd(n,t).  The induction tracks, for each PP cycle, the cyclic sequence
// of GT-cycle labels its notes belong to:
//
//   * growing an even series to an odd one inserts the new note at the
//     center position; the note either starts a new fixed point (when it is
//     a GT fixed point) or is spliced into a PP cycle immediately before a
//     note sharing its GT cycle,
//   * growing an odd series to an even one places the new note beside its
//     mirror; the central cycle is split in two, joined with a cycle sharing
//     the new note's GT cycle, or simply extended when the note is GT-fixed.
//
// At odd sizes cycles[0] is the central cycle, anchored so the center note's
// label comes last.  Label sequences are deduplicated up to rotation of
// non-central cycles, reordering of equal-length PP cycles and relabeling of
// equal-length GT cycles.  Every step corresponds to an explicit series
// extension, so each surviving structure carries a replayable witness.

#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "prolifera/permutation.hpp"

namespace prolifera {

/// Cycle-length multiset of a transposition or stand-in permutation.
class GTShape {
public:
    explicit GTShape(std::vector<int> lengths) : lengths_(std::move(lengths)) {
        if (lengths_.empty())
            throw std::invalid_argument("GTShape: at least one cycle required");
        for (int len : lengths_)
            if (len < 1)
                throw std::invalid_argument("GTShape: cycle lengths must be >= 1");
        std::sort(lengths_.rbegin(), lengths_.rend());
    }

    static GTShape from_transposition(int n, int t) {
        check_transposition(t, n);
        const int g = std::gcd(n, t == 0 ? n : t);
        return GTShape(std::vector<int>(static_cast<std::size_t>(g), n / g));
    }

    /// Non-increasing cycle lengths.
    const std::vector<int>& lengths() const { return lengths_; }
    int total() const { return std::accumulate(lengths_.begin(), lengths_.end(), 0); }

    friend bool operator==(const GTShape&, const GTShape&) = default;

private:
    std::vector<int> lengths_;
};

namespace gtdetail {

// PP cycles as cyclic sequences; entries are GT-cycle labels during
// enumeration and concrete note ids during witness replay.
using Cycles = std::vector<std::vector<int>>;
using Shape = std::vector<int>;  // non-increasing GT cycle lengths

inline std::vector<int> rotated(const std::vector<int>& cycle, int start) {
    std::vector<int> out;
    out.reserve(cycle.size());
    for (std::size_t p = 0; p < cycle.size(); ++p)
        out.push_back(cycle[(static_cast<std::size_t>(start) + p) % cycle.size()]);
    return out;
}

struct Move {
    enum class Type {
        Base,             // one-note series, single GT fixed point
        OddNewFixed,      // center note is a GT fixed point -> new PP fixed point
        OddInsert,        // splice center note into cycle `cycle` before position `pos`
        EvenGrowCentral,  // GT-fixed note extends the central cycle
        EvenSplit,        // central cycle splits at position `pos`
        EvenJoin          // central cycle joins cycle `cycle` at position `pos`
    };
    Type type = Type::Base;
    int label = 0;
    int cycle = 0;
    int pos = 0;
};

// Rebuilds the child cycle list from a parent presentation.  Shared between
// label enumeration (inserted = the new note's label) and concrete replay
// (inserted = the new note's id); the shapes of both transformations must
// stay identical for the replay bookkeeping to hold.
inline Cycles apply_move(const Cycles& parent, const Move& m, int inserted) {
    Cycles out;
    switch (m.type) {
    case Move::Type::Base:
        out.push_back({inserted});
        return out;
    case Move::Type::OddNewFixed:
        out.push_back({inserted});
        out.insert(out.end(), parent.begin(), parent.end());
        return out;
    case Move::Type::OddInsert: {
        std::vector<int> central = rotated(parent[static_cast<std::size_t>(m.cycle)], m.pos);
        central.push_back(inserted);
        out.push_back(std::move(central));
        for (std::size_t j = 0; j < parent.size(); ++j)
            if (static_cast<int>(j) != m.cycle)
                out.push_back(parent[j]);
        return out;
    }
    case Move::Type::EvenGrowCentral:
        out = parent;
        out[0].push_back(inserted);
        return out;
    case Move::Type::EvenSplit: {
        const std::vector<int>& central = parent[0];
        out.assign(parent.begin() + 1, parent.end());
        std::vector<int> head{inserted};
        head.insert(head.end(), central.begin(), central.begin() + m.pos);
        out.push_back(std::move(head));
        out.emplace_back(central.begin() + m.pos, central.end());
        return out;
    }
    case Move::Type::EvenJoin: {
        const std::vector<int>& central = parent[0];
        std::vector<int> joined{inserted};
        joined.insert(joined.end(), central.begin(), central.end());
        const std::vector<int> tail = rotated(parent[static_cast<std::size_t>(m.cycle)], m.pos);
        joined.insert(joined.end(), tail.begin(), tail.end());
        for (std::size_t j = 1; j < parent.size(); ++j)
            if (static_cast<int>(j) != m.cycle)
                out.push_back(parent[j]);
        out.push_back(std::move(joined));
        return out;
    }
    }
    throw std::logic_error("apply_move: unreachable");
}

struct Placement {
    int src = 0;  // index into the raw cycle list
    int rot = 0;  // rotation applied to it
};

struct CanonResult {
    Cycles canonical;
    std::vector<Placement> placement;
};

// Canonical form under the labeled-structure equivalence.  Output cycle
// order: central first when anchored, the rest by ascending length; within
// equal lengths the order, the rotation of each non-anchored cycle and the
// naming of equal-length GT labels are chosen to minimize the token
// sequence ((GT length, renamed id) per note).  Branch-and-bound over tied
// prefixes keeps the search exact.
class Canonicalizer {
public:
    Canonicalizer(const Cycles& raw, bool has_central, const Shape& shape)
        : raw_(raw), has_central_(has_central), shape_(shape) {
        class_start_.resize(shape.size());
        for (std::size_t i = 1; i < shape.size(); ++i)
            class_start_[i] = shape[i] == shape[i - 1] ? class_start_[i - 1]
                                                       : static_cast<int>(i);
    }

    CanonResult run() {
        std::vector<std::size_t> order(raw_.size());
        std::iota(order.begin(), order.end(), 0);
        // Slot sequence: anchored cycle first, then ascending lengths.
        slots_.clear();
        std::vector<std::size_t> rest;
        for (std::size_t i = has_central_ ? 1 : 0; i < raw_.size(); ++i)
            rest.push_back(i);
        std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
            return raw_[a].size() < raw_[b].size();
        });
        if (has_central_)
            slots_.push_back(raw_[0].size());
        for (std::size_t idx : rest)
            slots_.push_back(raw_[idx].size());

        State init;
        init.used.assign(raw_.size(), false);
        init.label_map.assign(shape_.size(), -1);
        init.next_in_class.assign(shape_.size(), 0);  // indexed by class_start
        search(init, 0, {}, {});
        if (!has_best_)
            throw std::logic_error("canonicalize: no candidate found");
        CanonResult result;
        result.placement = best_placement_;
        result.canonical.reserve(best_tokens_.size());
        for (const auto& cyc : best_tokens_) {
            std::vector<int> labels;
            labels.reserve(cyc.size());
            for (const auto& tok : cyc)
                labels.push_back(tok.second);
            result.canonical.push_back(std::move(labels));
        }
        return result;
    }

private:
    using Token = std::pair<int, int>;  // (GT cycle length, canonical label)
    using TokenCycle = std::vector<Token>;

    struct State {
        std::vector<char> used;
        std::vector<int> label_map;      // raw label -> canonical label
        std::vector<int> next_in_class;  // per class_start: labels assigned so far
    };

    // Token segment for one candidate (cycle, rotation) plus the renaming it
    // would commit to.
    TokenCycle segment(const State& st, std::size_t src, int rot, State& next) const {
        next = st;
        TokenCycle seg;
        const auto& cyc = raw_[src];
        seg.reserve(cyc.size());
        for (std::size_t p = 0; p < cyc.size(); ++p) {
            const int raw_label = cyc[(static_cast<std::size_t>(rot) + p) % cyc.size()];
            int canon = next.label_map[static_cast<std::size_t>(raw_label)];
            if (canon < 0) {
                const int cls = class_start_[static_cast<std::size_t>(raw_label)];
                canon = cls + next.next_in_class[static_cast<std::size_t>(cls)]++;
                next.label_map[static_cast<std::size_t>(raw_label)] = canon;
            }
            seg.emplace_back(shape_[static_cast<std::size_t>(raw_label)], canon);
        }
        next.used[src] = true;
        return seg;
    }

    void search(const State& st, std::size_t slot, std::vector<TokenCycle> acc,
                std::vector<Placement> placed) {
        if (slot == slots_.size()) {
            if (!has_best_ || acc < best_tokens_) {
                best_tokens_ = acc;
                best_placement_ = placed;
                has_best_ = true;
            }
            return;
        }
        struct Candidate {
            TokenCycle seg;
            State next;
            Placement place;
        };
        std::vector<Candidate> mins;
        auto consider = [&](std::size_t src, int rot) {
            Candidate c;
            c.seg = segment(st, src, rot, c.next);
            c.place = {static_cast<int>(src), rot};
            if (mins.empty() || c.seg < mins.front().seg) {
                mins.clear();
                mins.push_back(std::move(c));
            } else if (c.seg == mins.front().seg) {
                mins.push_back(std::move(c));
            }
        };
        if (slot == 0 && has_central_) {
            consider(0, 0);  // anchored: no rotation, fixed position
        } else {
            for (std::size_t src = has_central_ ? 1 : 0; src < raw_.size(); ++src) {
                if (st.used[src] || raw_[src].size() != slots_[slot])
                    continue;
                for (int rot = 0; rot < static_cast<int>(raw_[src].size()); ++rot)
                    consider(src, rot);
            }
        }
        for (auto& c : mins) {
            auto acc2 = acc;
            acc2.push_back(c.seg);
            auto placed2 = placed;
            placed2.push_back(c.place);
            search(c.next, slot + 1, std::move(acc2), std::move(placed2));
        }
    }

    const Cycles& raw_;
    bool has_central_;
    const Shape& shape_;
    std::vector<int> class_start_;     // label -> first label index of its length class
    std::vector<std::size_t> slots_;   // required length per output slot

    std::vector<TokenCycle> best_tokens_;
    std::vector<Placement> best_placement_;
    bool has_best_ = false;
};

inline CanonResult canonicalize(const Cycles& raw, bool has_central, const Shape& shape) {
    return Canonicalizer(raw, has_central, shape).run();
}

struct Back {
    Move move;
    Shape parent_shape;
    Cycles parent;  // canonical presentation the move applies to
};

// Enumerates every reachable labeled structure per shape, with one
// replayable construction path each.
class Engine {
public:
    using LevelSet = std::map<Cycles, Back>;

    const LevelSet& explore(const Shape& shape) {
        auto it = memo_.find(shape);
        if (it != memo_.end())
            return it->second;
        LevelSet level;
        const int n = std::accumulate(shape.begin(), shape.end(), 0);
        if (n == 1) {
            level.emplace(Cycles{{0}}, Back{Move{}, {}, {}});
            return memo_.emplace(shape, std::move(level)).first->second;
        }
        const bool odd = n % 2 != 0;
        for (std::size_t i = 0; i < shape.size(); ++i) {
            if (i + 1 < shape.size() && shape[i] == shape[i + 1])
                continue;  // one representative per GT cycle length
            std::vector<Move> moves;
            Shape parent_shape = shape;
            if (shape[i] == 1) {
                parent_shape.pop_back();  // 1s sort last, i == size-1
                if (parent_shape.empty())
                    continue;
            } else {
                parent_shape[i] -= 1;
            }
            const LevelSet& parents = explore(parent_shape);
            for (const auto& [parent, _] : parents) {
                moves.clear();
                const int label = static_cast<int>(i);
                if (odd) {
                    if (shape[i] == 1) {
                        moves.push_back({Move::Type::OddNewFixed, label, 0, 0});
                    } else {
                        for (std::size_t j = 0; j < parent.size(); ++j)
                            for (std::size_t k = 0; k < parent[j].size(); ++k)
                                if (parent[j][k] == label)
                                    moves.push_back({Move::Type::OddInsert, label,
                                                     static_cast<int>(j),
                                                     static_cast<int>(k)});
                    }
                } else {
                    if (shape[i] == 1) {
                        moves.push_back({Move::Type::EvenGrowCentral, label, 0, 0});
                    } else {
                        for (std::size_t k = 0; k < parent[0].size(); ++k)
                            if (parent[0][k] == label)
                                moves.push_back({Move::Type::EvenSplit, label, 0,
                                                 static_cast<int>(k)});
                        for (std::size_t j = 1; j < parent.size(); ++j)
                            for (std::size_t k = 0; k < parent[j].size(); ++k)
                                if (parent[j][k] == label)
                                    moves.push_back({Move::Type::EvenJoin, label,
                                                     static_cast<int>(j),
                                                     static_cast<int>(k)});
                    }
                }
                for (const Move& m : moves) {
                    Cycles raw = apply_move(parent, m, m.label);
                    CanonResult canon = canonicalize(raw, odd, shape);
                    if (!level.contains(canon.canonical))
                        level.emplace(std::move(canon.canonical),
                                      Back{m, parent_shape, parent});
                }
            }
        }
        return memo_.emplace(shape, std::move(level)).first->second;
    }

    std::set<CycleStructure> reachable_structures(const Shape& shape) {
        std::set<CycleStructure> out;
        for (const auto& [cycles, _] : explore(shape)) {
            CycleStructure s;
            s.reserve(cycles.size());
            for (const auto& c : cycles)
                s.push_back(static_cast<int>(c.size()));
            std::sort(s.begin(), s.end());
            out.insert(std::move(s));
        }
        return out;
    }

    // Replays the stored construction path of `target`, building a concrete
    // series over abstract note ids together with the GT permutation, then
    // maps the abstract GT cycles onto the residue cycles of x -> x + t.
    // Returns the witness transposed to start at 0.
    Series realize(const CycleStructure& target, int n, int t) {
        const GTShape gts = GTShape::from_transposition(n, t);
        const Shape& shape = gts.lengths();
        const LevelSet& top = explore(shape);
        const Cycles* goal = nullptr;
        for (const auto& [cycles, _] : top) {
            CycleStructure s;
            for (const auto& c : cycles)
                s.push_back(static_cast<int>(c.size()));
            std::sort(s.begin(), s.end());
            if (s == target) {
                goal = &cycles;
                break;
            }
        }
        if (goal == nullptr)
            throw std::invalid_argument(
                "realize: structure is not reachable by the retrograde induction for n=" +
                std::to_string(n) + ", t=" + std::to_string(t));

        // Path from the base case up to the goal.
        struct Step {
            Shape shape;
            Cycles canonical;
            Move move;
        };
        std::vector<Step> path;
        Shape cur_shape = shape;
        Cycles cur = *goal;
        while (true) {
            const Back& back = memo_.at(cur_shape).at(cur);
            path.push_back({cur_shape, cur, back.move});
            if (back.move.type == Move::Type::Base)
                break;
            cur_shape = back.parent_shape;
            cur = back.parent;
        }
        std::reverse(path.begin(), path.end());

        std::vector<int> series;     // abstract note ids by position
        std::vector<int> gt_succ;    // abstract GT permutation
        Cycles pres;                 // concrete mirror of the current canonical form
        Cycles prev_canonical;       // the label view pres corresponds to
        for (const Step& step : path) {
            const int level = std::accumulate(step.shape.begin(), step.shape.end(), 0);
            const int nu = static_cast<int>(gt_succ.size());
            gt_succ.push_back(nu);
            if (step.move.type == Move::Type::Base) {
                series = {nu};
                pres = {{nu}};
                prev_canonical = step.canonical;
                continue;
            }
            const bool odd = level % 2 != 0;
            if (step.move.type == Move::Type::OddInsert ||
                step.move.type == Move::Type::EvenSplit ||
                step.move.type == Move::Type::EvenJoin) {
                // nu joins an existing GT cycle immediately before note b.
                const int b = pres[static_cast<std::size_t>(step.move.cycle)]
                                  [static_cast<std::size_t>(step.move.pos)];
                int a = -1;
                for (int x = 0; x < nu; ++x)
                    if (gt_succ[static_cast<std::size_t>(x)] == b)
                        a = x;
                gt_succ[static_cast<std::size_t>(a)] = nu;
                gt_succ[static_cast<std::size_t>(nu)] = b;
            }
            const int at = odd ? (level - 1) / 2 : level / 2;
            series.insert(series.begin() + at, nu);

            // The concrete view follows the exact canonical transform computed
            // on the label view, keeping both aligned slot for slot.
            Cycles pres_raw = apply_move(pres, step.move, nu);
            Cycles label_raw = apply_move(prev_canonical, step.move, step.move.label);
            CanonResult canon = canonicalize(label_raw, odd, step.shape);
            if (canon.canonical != step.canonical)
                throw std::logic_error("realize: replay diverged from stored canonical form");
            Cycles next;
            next.reserve(canon.placement.size());
            for (const Placement& pl : canon.placement)
                next.push_back(rotated(pres_raw[static_cast<std::size_t>(pl.src)], pl.rot));
            pres = std::move(next);
            prev_canonical = step.canonical;
        }

        return to_concrete_series(series, gt_succ, n, t);
    }

private:
    // Abstract witness -> pitch classes.  Each abstract GT cycle is laid onto
    // one residue cycle (r, r+t, r+2t, ...) of the real transposition.
    static Series to_concrete_series(const std::vector<int>& series,
                                     const std::vector<int>& gt_succ, int n, int t) {
        const int g = std::gcd(n, t == 0 ? n : t);
        std::vector<int> value_of(gt_succ.size(), -1);
        std::vector<char> seen(gt_succ.size(), false);
        int residue = 0;
        for (std::size_t start = 0; start < gt_succ.size(); ++start) {
            if (seen[start])
                continue;
            if (residue >= g)
                throw std::logic_error("to_concrete_series: more GT cycles than residues");
            int x = static_cast<int>(start);
            int k = 0;
            while (!seen[static_cast<std::size_t>(x)]) {
                seen[static_cast<std::size_t>(x)] = true;
                value_of[static_cast<std::size_t>(x)] = mod_reduce(residue + k * t, n);
                x = gt_succ[static_cast<std::size_t>(x)];
                ++k;
            }
            if (k != n / g)
                throw std::logic_error("to_concrete_series: GT cycle length mismatch");
            ++residue;
        }
        std::vector<PitchClass> notes;
        notes.reserve(series.size());
        for (int id : series)
            notes.push_back(value_of[static_cast<std::size_t>(id)]);
        return normalize_to_zero(Series(std::move(notes)));
    }

    std::map<Shape, LevelSet> memo_;
};

}  // namespace gtdetail
}  // namespace prolifera
