#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nlsd/box.hpp"
#include "nlsd/wiring.hpp"

namespace nlsd {

// Memoized wired blocks over the nine simplex vertices (PR, L1..L8).
//
// The (x,y) block of W(p,q) depends only on the couplers the parties apply
// at (x,y), so every per-wiring quantity over vertex pairs can be assembled
// from the 82*82*9*9 blocks computed here once. Vertex-pair blocks have
// denominator 4, so entries are stored as integer quarters.
class BlockTable {
public:
    // Built on first use, then shared read-only.
    static const BlockTable& get();

    // Quarters (0..4) of the block of W(vertex_v, vertex_w) under coupler
    // pair (ca, cb); entries in (a,b) = 00,01,10,11 order.
    const std::int8_t* block(int ca, int cb, int v, int w) const {
        return &quarters_[cell(ca, cb, v, w) * 4];
    }

    // 4*E of that block, in -4..4.
    std::int8_t e4(int ca, int cb, int v, int w) const { return e4_[cell(ca, cb, v, w)]; }

    // Row of all 81 vertex-pair E4 values for one coupler pair, indexed v*9+w.
    const std::int8_t* e4_row(int ca, int cb) const {
        return &e4_[(static_cast<std::size_t>(ca) * 82 + cb) * 81];
    }

    // Whether the (PR,PR) block under (ca, cb) equals PR's correlated block
    // (1/2,0,0,1/2) or its anticorrelated block (0,1/2,1/2,0).
    bool pr_corr(int ca, int cb) const { return pr_corr_[ca * 82 + cb]; }
    bool pr_anti(int ca, int cb) const { return pr_anti_[ca * 82 + cb]; }

    // E4 of the four final-input blocks of W(vertex_v, vertex_w), in
    // (x,y) = 00,01,10,11 order.
    std::array<int, 4> e4_of_pair(const Wiring& w, int v, int wt) const {
        return {e4(w.alice.at0, w.bob.at0, v, wt), e4(w.alice.at0, w.bob.at1, v, wt),
                e4(w.alice.at1, w.bob.at0, v, wt), e4(w.alice.at1, w.bob.at1, v, wt)};
    }

    // Exact assembly of W(vertex_v, vertex_w) from the memoized blocks.
    Box assemble(const Wiring& w, int v, int wt) const;

    // True iff W(PR,PR) under this wiring equals PR exactly.
    bool fixes_pr(const Wiring& w) const {
        return pr_corr(w.alice.at0, w.bob.at0) && pr_corr(w.alice.at0, w.bob.at1) &&
               pr_corr(w.alice.at1, w.bob.at0) && pr_anti(w.alice.at1, w.bob.at1);
    }

private:
    BlockTable();

    static std::size_t cell(int ca, int cb, int v, int w) {
        return ((static_cast<std::size_t>(ca) * 82 + cb) * 9 + v) * 9 + w;
    }

    std::vector<std::int8_t> quarters_;  // 82*82*9*9*4
    std::vector<std::int8_t> e4_;        // 82*82*9*9
    std::vector<std::uint8_t> pr_corr_, pr_anti_;
};

// max over the eight odd sign patterns of +-e00 +-e01 +-e10 +-e11 (any common
// scaling of the correlators). Equals sum|e_i| when a pattern with product -1
// can match all signs, else sum|e_i| - 2*min|e_i|.
inline int chsh_max_scaled(int e00, int e01, int e10, int e11) {
    int s = 0, m = 1 << 30, negs = 0, zeros = 0;
    for (int e : {e00, e01, e10, e11}) {
        int a = e < 0 ? -e : e;
        if (e < 0) ++negs;
        if (e == 0) ++zeros;
        s += a;
        if (a < m) m = a;
    }
    if (zeros == 0 && (negs & 1) == 0) s -= 2 * m;
    return s;
}

}  // namespace nlsd
