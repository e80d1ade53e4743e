#include "nlsd/block_table.hpp"

#include <stdexcept>

namespace nlsd {

namespace {

// Vertex boxes in half-units (0, 1, 2) for integer block accumulation.
std::array<std::array<std::int8_t, 16>, 9> vertex_halves() {
    std::array<std::array<std::int8_t, 16>, 9> vs{};
    for (int v = 0; v <= 8; ++v) {
        const Box& b = simplex_vertex(v);
        for (int i = 0; i < 16; ++i) {
            const Rat& r = b.e[i];
            vs[v][i] = static_cast<std::int8_t>(r.num() * 2 / r.den());
        }
    }
    return vs;
}

}  // namespace

const BlockTable& BlockTable::get() {
    static const BlockTable table;
    return table;
}

BlockTable::BlockTable() {
    const auto verts = vertex_halves();

    std::array<CouplerMap, kCouplerCount> maps;
    for (int c = 0; c < kCouplerCount; ++c) maps[c] = compile_coupler(coupler_from_id(c));

    const std::size_t cells = 82ull * 82 * 9 * 9;
    quarters_.assign(cells * 4, 0);
    e4_.assign(cells, 0);
    pr_corr_.assign(82 * 82, 0);
    pr_anti_.assign(82 * 82, 0);

    for (int ca = 0; ca < kCouplerCount; ++ca)
        for (int cb = 0; cb < kCouplerCount; ++cb)
            for (int v = 0; v <= 8; ++v)
                for (int w = 0; w <= 8; ++w) {
                    int r[4] = {0, 0, 0, 0};
                    for (int a1 = 0; a1 < 2; ++a1)
                        for (int a2 = 0; a2 < 2; ++a2) {
                            const auto& ea = maps[ca].at[a1][a2];
                            for (int b1 = 0; b1 < 2; ++b1)
                                for (int b2 = 0; b2 < 2; ++b2) {
                                    const auto& eb = maps[cb].at[b1][b2];
                                    int ph = verts[v][Box::entry_index(a1, b1, ea.x1, eb.x1)];
                                    if (ph == 0) continue;
                                    int qh = verts[w][Box::entry_index(a2, b2, ea.x2, eb.x2)];
                                    r[2 * ea.a + eb.a] += ph * qh;
                                }
                        }
                    if (r[0] + r[1] + r[2] + r[3] != 4)
                        throw std::logic_error("BlockTable: block not normalized");
                    std::size_t idx = cell(ca, cb, v, w);
                    for (int k = 0; k < 4; ++k)
                        quarters_[idx * 4 + k] = static_cast<std::int8_t>(r[k]);
                    e4_[idx] = static_cast<std::int8_t>(r[0] - r[1] - r[2] + r[3]);
                    if (v == 0 && w == 0) {
                        pr_corr_[ca * 82 + cb] = (r[0] == 2 && r[1] == 0 && r[2] == 0 && r[3] == 2);
                        pr_anti_[ca * 82 + cb] = (r[0] == 0 && r[1] == 2 && r[2] == 2 && r[3] == 0);
                    }
                }
}

Box BlockTable::assemble(const Wiring& w, int v, int wt) const {
    Box out;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const std::int8_t* blk = block(w.coupler_at(false, x), w.coupler_at(true, y), v, wt);
            for (int k = 0; k < 4; ++k) out.e[4 * (2 * x + y) + k] = Rat(blk[k], 4);
        }
    return out;
}

}  // namespace nlsd
