#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlsd/rational.hpp"

namespace nlsd {

// A bipartite two-input/two-output conditional distribution p(ab|xy),
// stored as 16 exact rationals. Entry order follows the usual p1..p16
// convention: index = 4*(2x+y) + (2a+b), i.e. rows are the input pairs
// (x,y) = 00,01,10,11 and columns the outcome pairs (a,b) = 00,01,10,11.
struct Box {
    std::array<Rat, 16> e{};

    Rat& at(int a, int b, int x, int y) { return e[entry_index(a, b, x, y)]; }
    const Rat& at(int a, int b, int x, int y) const { return e[entry_index(a, b, x, y)]; }

    static int entry_index(int a, int b, int x, int y) { return 4 * (2 * x + y) + (2 * a + b); }

    friend bool operator==(const Box& p, const Box& q) { return p.e == q.e; }
    friend bool operator!=(const Box& p, const Box& q) { return !(p == q); }
};

// Coordinates of a box in the nonlocal simplex spanned by PR and L1..L8:
// p = c0*PR + sum_i c[i-1]*L_i, all weights >= 0 summing to 1.
struct NLSPoint {
    Rat c0;
    std::array<Rat, 8> c{};
};

struct Correlators {
    // e[x][y] = E_xy = P(a=b|xy) - P(a!=b|xy)
    std::array<std::array<Rat, 2>, 2> e{};
};

struct PointDiagnostics {
    Rat nl;
    Rat chsh_max;
    Rat uffink_lhs;
    bool cc_trivial{};
    bool in_nls{};
};

struct ValidationError {
    enum class Kind { OutOfRange, BlockNotNormalized, SignallingAlice, SignallingBob };
    Kind kind{};
    int p0{};  // entry index / x / a / b, depending on kind
    int p1{};  // unused / y / x / y
    std::string message() const;
};

class box_validation_error : public std::invalid_argument {
public:
    explicit box_validation_error(const ValidationError& err)
        : std::invalid_argument(err.message()), err_(err) {}
    const ValidationError& error() const { return err_; }

private:
    ValidationError err_;
};

// Entry positions that are zero in PR^000; they parametrize the nonlocal
// simplex. Zero-based indices of p2,p3,p6,p7,p10,p11,p13,p16, listed in the
// order of the local vertices L1..L8 they correspond to.
inline constexpr std::array<int, 8> kFreeEntryIndex = {1, 2, 5, 6, 9, 10, 12, 15};

// The 8 odd sign patterns (product -1) applied to (E00,E01,E10,E11):
// first the four single-minus patterns with the minus at E00,E01,E10,E11,
// then the four triple-minus patterns ordered lexicographically by their
// minus positions.
inline constexpr std::array<std::array<int, 4>, 8> kChshSigns = {{
    {-1, +1, +1, +1},
    {+1, -1, +1, +1},
    {+1, +1, -1, +1},
    {+1, +1, +1, -1},
    {-1, -1, -1, +1},
    {-1, -1, +1, -1},
    {-1, +1, -1, -1},
    {+1, -1, -1, -1},
}};

// --- construction -----------------------------------------------------

// PR^{mu nu sigma}(ab|xy) = 1/2 iff a^b = xy ^ mu*x ^ nu*y ^ sigma.
Box pr_box(int mu, int nu, int sigma);

// L_{alpha beta gamma theta}: a = alpha*x ^ beta, b = gamma*y ^ theta.
Box local_box(int alpha, int beta, int gamma, int theta);

// L_i, i in 1..8, the local boxes saturating the standard CHSH bound
// (theta = alpha*gamma ^ beta), in the usual L1..L8 ordering.
Box local_vertex(int i);

// Vertex 0 = PR^000, vertices 1..8 = L_1..L_8.
const Box& simplex_vertex(int v);

// All 24 extremal non-signalling boxes: the 8 PR variants then the 16
// deterministic local boxes, in lexicographic parameter order.
const std::vector<Box>& ns_vertices();

Box mix(const std::vector<std::pair<Rat, Box>>& terms);

// --- validation --------------------------------------------------------

// Returns the first violated constraint, checked in the order: entry range,
// block normalization, Bob's marginals (independence of x), then Alice's
// marginals (independence of y). nullopt means the entries form a valid
// non-signalling box.
std::optional<ValidationError> find_violation(const std::array<Rat, 16>& entries);

// Throwing form of find_violation.
Box validated_box(const std::array<Rat, 16>& entries);

// --- functionals (all exact) --------------------------------------------

Correlators correlators(const Box& p);
std::array<Rat, 8> chsh_symmetries(const Box& p);
Rat chsh_max(const Box& p);
Rat nl(const Box& p);
Rat uffink_lhs(const Box& p);
bool uffink_violates(const Box& p);
// Max of the plain Uffink form over the 8 odd sign patterns applied to the
// correlators. Off by default everywhere; provided for exploration only.
Rat uffink_lhs_symmetrized(const Box& p);
// CHSH >= 4*sqrt(2/3), decided exactly as chsh_max >= 0 and 3*chsh_max^2 >= 32.
bool cc_trivial(const Box& p);
PointDiagnostics diagnostics(const Box& p);

// --- nonlocal simplex chart ----------------------------------------------

struct Decomposition {
    std::optional<NLSPoint> point;  // present iff c0 = 1 - free_sum >= 0
    Rat free_sum;                   // sum of the eight free-variable entries
};

// Reads the free-variable coordinates; for a valid NS box the affine
// reconstruction from them reproduces the box exactly, so the point is the
// unique simplex decomposition whenever c0 >= 0.
Decomposition decompose(const Box& p);

Box reconstruct(const NLSPoint& pt);

// --- text format -----------------------------------------------------------

// 16 fields in entry order, each "num/den", an integer, or a finite decimal;
// separated by commas and/or whitespace.
std::optional<std::array<Rat, 16>> parse_box_entries(std::string_view text);
std::string format_box(const Box& p);

// --- generic scalar helpers (shared with the float/bigint engines) ---------

template <class S>
std::array<S, 4> correlators4(const std::array<S, 16>& e) {
    std::array<S, 4> out{};
    for (int blk = 0; blk < 4; ++blk)
        out[blk] = e[4 * blk + 0] + e[4 * blk + 3] - e[4 * blk + 1] - e[4 * blk + 2];
    return out;
}

template <class S>
S chsh_max_of(const std::array<S, 4>& corr) {
    S best = S(0);
    bool first = true;
    for (const auto& signs : kChshSigns) {
        S v = S(0);
        for (int k = 0; k < 4; ++k) {
            if (signs[k] > 0)
                v += corr[k];
            else
                v -= corr[k];
        }
        if (first || best < v) {
            best = v;
            first = false;
        }
    }
    return best;
}

template <class S>
S nl_of(const std::array<S, 4>& corr) {
    S v = (chsh_max_of(corr) - S(2)) / S(2);
    return v < S(0) ? S(0) : v;
}

template <class S>
S uffink_of(const std::array<S, 4>& corr) {
    S u = corr[0] + corr[2];
    S v = corr[1] - corr[3];
    return u * u + v * v;
}

template <class S>
std::array<S, 16> box_cast(const Box& p) {
    std::array<S, 16> out{};
    for (int i = 0; i < 16; ++i) out[i] = S(p.e[i].num()) / S(p.e[i].den());
    return out;
}

template <>
inline std::array<Rat, 16> box_cast<Rat>(const Box& p) {
    return p.e;
}

}  // namespace nlsd
