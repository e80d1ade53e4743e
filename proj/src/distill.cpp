#include "nlsd/distill.hpp"

#include <algorithm>
#include <climits>
#include <fstream>
#include <sstream>

#include "nlsd/sweep.hpp"

namespace nlsd {

namespace {

Rat nl_from_chsh4(int chsh4) { return chsh4 <= 8 ? Rat(0) : Rat(chsh4 - 8, 8); }

int klass_entry_exact(int chsh4) {
    // Vertex classes are defined through NL values, which the census pins to
    // {0,1} for the (PR,L_i) and (L_i,PR) terms.
    return chsh4 == 16 ? 1 : 0;
}

}  // namespace

BasisTable basis_table(const Wiring& w) {
    const BlockTable& bt = BlockTable::get();
    BasisTable t;
    t.wiring_id = w.id();
    for (int v = 0; v <= 8; ++v)
        for (int u = 0; u <= 8; ++u) t.boxes[v][u] = bt.assemble(w, v, u);
    t.nl00 = nl(t.boxes[0][0]);
    for (int k = 1; k <= 8; ++k) t.klass[k - 1] = (nl(t.boxes[k][0]) + nl(t.boxes[0][k])).num();
    return t;
}

FaceSpec FaceSpec::of(std::vector<int> vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    if (vs.empty() || vs.front() < 1 || vs.back() > 8)
        throw std::invalid_argument("FaceSpec: vertices must be a nonempty subset of 1..8");
    return FaceSpec{std::move(vs)};
}

std::string FaceSpec::str() const {
    std::string s = "{";
    for (size_t i = 0; i < vertices.size(); ++i) {
        if (i) s += ',';
        s += 'L';
        s += static_cast<char>('0' + vertices[i]);
    }
    return s + "}";
}

ConditionReport necessary_condition(const NLSPoint& pt, const BasisTable& bt) {
    if (pt.c0.is_zero()) throw local_point_error();
    ConditionReport r;
    r.ctilde = {Rat(0), Rat(0), Rat(0)};
    r.margin = pt.c0 * (bt.nl00 - Rat(1));
    for (int k = 1; k <= 8; ++k) {
        int cls = bt.klass[k - 1];
        r.ctilde[cls] += pt.c[k - 1];
        r.margin += pt.c[k - 1] * Rat(cls - 1);
    }
    r.passes = r.margin.sign() > 0;
    return r;
}

FaceConditionReport face_condition(const FaceSpec& face, const BasisTable& bt) {
    if (bt.nl00 != Rat(1)) throw not_pr_fixing_error();
    FaceConditionReport r;
    bool all_ge1 = true, any2 = false;
    for (int k : face.vertices) {
        int cls = bt.klass[k - 1];
        r.classes.push_back(cls);
        all_ge1 = all_ge1 && cls >= 1;
        any2 = any2 || cls == 2;
    }
    r.holds = all_ge1 && any2;
    return r;
}

std::vector<Rat> QuadraticFlow::step(const std::vector<Rat>& c) const {
    const size_t k = support.size();
    if (c.size() != k) throw std::invalid_argument("QuadraticFlow::step: wrong arity");
    std::vector<Rat> out(k, Rat(0));
    for (size_t u = 0; u < k; ++u)
        for (size_t v = 0; v < k; ++v)
            for (size_t w = 0; w < k; ++w) out[u] += tensor[(u * k + v) * k + w] * c[v] * c[w];
    return out;
}

std::optional<QuadraticFlow> face_closure(const FaceSpec& face, const Wiring& w) {
    const BlockTable& bt = BlockTable::get();
    QuadraticFlow flow;
    flow.face = face;
    flow.support.push_back(0);
    for (int k : face.vertices) flow.support.push_back(k);
    const size_t k = flow.support.size();
    flow.tensor.assign(k * k * k, Rat(0));

    std::array<bool, 9> in_support{};
    for (int v : flow.support) in_support[v] = true;

    for (size_t vi = 0; vi < k; ++vi)
        for (size_t wi = 0; wi < k; ++wi) {
            Box b = bt.assemble(w, flow.support[vi], flow.support[wi]);
            auto dec = decompose(b);
            if (!dec.point) return std::nullopt;
            for (int i = 1; i <= 8; ++i)
                if (!in_support[i] && !dec.point->c[i - 1].is_zero()) return std::nullopt;
            flow.tensor[(0 * k + vi) * k + wi] = dec.point->c0;
            for (size_t u = 1; u < k; ++u)
                flow.tensor[(u * k + vi) * k + wi] = dec.point->c[flow.support[u] - 1];
        }
    return flow;
}

// --- universe sweeps ---------------------------------------------------------

namespace {

struct ProfileChunk {
    std::vector<WiringProfile> profiles;
};

std::array<std::uint8_t, 8> klass_of(const BlockTable& bt, int a0, int a1, int b0, int b1) {
    const std::int8_t* r00 = bt.e4_row(a0, b0);
    const std::int8_t* r01 = bt.e4_row(a0, b1);
    const std::int8_t* r10 = bt.e4_row(a1, b0);
    const std::int8_t* r11 = bt.e4_row(a1, b1);
    std::array<std::uint8_t, 8> k{};
    for (int i = 1; i <= 8; ++i) {
        int c0i = chsh_max_scaled(r00[i], r01[i], r10[i], r11[i]);        // W(PR, L_i)
        int ci0 = chsh_max_scaled(r00[9 * i], r01[9 * i], r10[9 * i], r11[9 * i]);  // W(L_i, PR)
        k[i - 1] = static_cast<std::uint8_t>(klass_entry_exact(c0i) + klass_entry_exact(ci0));
    }
    return k;
}

ProfileChunk profiles_range(std::uint64_t lo, std::uint64_t hi) {
    const BlockTable& bt = BlockTable::get();
    ProfileChunk ch;
    std::uint64_t id = lo;
    while (id < hi) {
        Wiring w = Wiring::from_id(id);
        int a0 = w.alice.at0, a1 = w.alice.at1, b0 = w.bob.at0, b1 = w.bob.at1;
        std::uint64_t span = std::min<std::uint64_t>(hi - id, static_cast<std::uint64_t>(82 - b1));
        if (bt.pr_corr(a0, b0) && bt.pr_corr(a1, b0)) {
            for (std::uint64_t t = 0; t < span; ++t) {
                int bb = b1 + static_cast<int>(t);
                if (bt.pr_corr(a0, bb) && bt.pr_anti(a1, bb))
                    ch.profiles.push_back({id + t, klass_of(bt, a0, a1, b0, bb)});
            }
        }
        id += span;
    }
    return ch;
}

}  // namespace

std::vector<WiringProfile> pr_fixing_profiles(int threads, int partitions) {
    auto chunk = parallel_sweep<ProfileChunk>(
        0, kTotalWirings, threads, partitions, profiles_range,
        [](ProfileChunk& acc, ProfileChunk&& c) {
            acc.profiles.insert(acc.profiles.end(), c.profiles.begin(), c.profiles.end());
        });
    return std::move(chunk.profiles);
}

std::vector<std::uint64_t> pr_fixing_wirings(int threads, int partitions) {
    auto profiles = pr_fixing_profiles(threads, partitions);
    std::vector<std::uint64_t> ids;
    ids.reserve(profiles.size());
    for (const auto& p : profiles) ids.push_back(p.id);
    return ids;
}

namespace {

struct CensusChunk {
    std::uint64_t total{};
    std::uint64_t prfix{};
    std::array<std::array<std::uint64_t, 17>, 17> counts{};
    std::vector<WiringProfile> profiles;
};

CensusChunk census_range(std::uint64_t lo, std::uint64_t hi) {
    const BlockTable& bt = BlockTable::get();
    CensusChunk ch;
    std::uint64_t id = lo;
    while (id < hi) {
        Wiring w = Wiring::from_id(id);
        int a0 = w.alice.at0, a1 = w.alice.at1, b0 = w.bob.at0, b1 = w.bob.at1;
        int b1hi = static_cast<int>(
            std::min<std::uint64_t>(82, b1 + (hi - id)));
        const std::int8_t* r00 = bt.e4_row(a0, b0);
        const std::int8_t* r10 = bt.e4_row(a1, b0);
        bool corr00 = bt.pr_corr(a0, b0), corr10 = bt.pr_corr(a1, b0);
        for (int bb = b1; bb < b1hi; ++bb, ++id) {
            const std::int8_t* r01 = bt.e4_row(a0, bb);
            const std::int8_t* r11 = bt.e4_row(a1, bb);
            ++ch.total;
            int cms[17];
            cms[0] = chsh_max_scaled(r00[0], r01[0], r10[0], r11[0]);
            for (int i = 1; i <= 8; ++i) {
                cms[i] = chsh_max_scaled(r00[i], r01[i], r10[i], r11[i]);
                cms[8 + i] = chsh_max_scaled(r00[9 * i], r01[9 * i], r10[9 * i], r11[9 * i]);
            }
            for (int f = 0; f < 17; ++f) ++ch.counts[f][cms[f]];
            if (corr00 && corr10 && bt.pr_corr(a0, bb) && bt.pr_anti(a1, bb)) {
                ++ch.prfix;
                WiringProfile p;
                p.id = id;
                for (int i = 1; i <= 8; ++i)
                    p.klass[i - 1] = static_cast<std::uint8_t>(klass_entry_exact(cms[i]) +
                                                               klass_entry_exact(cms[8 + i]));
                ch.profiles.push_back(p);
            }
        }
    }
    return ch;
}

}  // namespace

CensusReport nl_value_census(int threads, int partitions) {
    auto chunk = parallel_sweep<CensusChunk>(
        0, kTotalWirings, threads, partitions, census_range,
        [](CensusChunk& acc, CensusChunk&& c) {
            acc.total += c.total;
            acc.prfix += c.prfix;
            for (int f = 0; f < 17; ++f)
                for (int v = 0; v < 17; ++v) acc.counts[f][v] += c.counts[f][v];
            acc.profiles.insert(acc.profiles.end(), c.profiles.begin(), c.profiles.end());
        });
    CensusReport rep;
    rep.total = chunk.total;
    rep.pr_fixing = chunk.prfix;
    rep.counts = chunk.counts;
    rep.profiles = std::move(chunk.profiles);
    return rep;
}

std::vector<std::string> CensusReport::nl_values(int functional) const {
    auto m = nl_counts(functional);
    std::vector<std::string> out;
    out.reserve(m.size());
    for (const auto& [k, _] : m) out.push_back(k);
    return out;
}

std::vector<std::pair<std::string, std::uint64_t>> CensusReport::nl_counts(int functional) const {
    std::vector<std::pair<std::string, std::uint64_t>> m;  // ascending nl value
    for (int c = 0; c <= 16; ++c) {
        std::uint64_t n = counts[functional][c];
        if (n == 0) continue;
        std::string key = nl_from_chsh4(c).str();
        if (!m.empty() && m.back().first == key)
            m.back().second += n;
        else
            m.emplace_back(key, n);
    }
    return m;
}

std::string CensusReport::serialize() const {
    std::ostringstream os;
    os << "total=" << total << "\npr_fixing=" << pr_fixing << "\n";
    for (int f = 0; f < 17; ++f)
        for (int c = 0; c <= 16; ++c)
            if (counts[f][c]) os << "f" << f << " chsh4=" << c << " n=" << counts[f][c] << "\n";
    for (const auto& p : profiles) {
        os << p.id << ":";
        for (int i = 0; i < 8; ++i) os << static_cast<int>(p.klass[i]);
        os << "\n";
    }
    return os.str();
}

bool save_profiles_csv(const std::string& path, const std::vector<WiringProfile>& profiles) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) return false;
    out << "wiring_id,nl00_num,nl00_den,i1,i2,i3,i4,i5,i6,i7,i8\n";
    for (const auto& p : profiles) {
        out << p.id << ",1,1";
        for (int i = 0; i < 8; ++i) out << ',' << static_cast<int>(p.klass[i]);
        out << '\n';
    }
    return static_cast<bool>(out);
}

std::optional<std::vector<WiringProfile>> load_profiles_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string line;
    if (!std::getline(in, line) || line != "wiring_id,nl00_num,nl00_den,i1,i2,i3,i4,i5,i6,i7,i8")
        return std::nullopt;
    std::vector<WiringProfile> out;
    std::uint64_t prev_id = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        WiringProfile p;
        char comma;
        std::uint64_t n_num, n_den;
        if (!(ls >> p.id >> comma >> n_num >> comma >> n_den) || comma != ',') return std::nullopt;
        if (p.id >= kTotalWirings || n_num != 1 || n_den != 1) return std::nullopt;
        if (!out.empty() && p.id <= prev_id) return std::nullopt;
        for (int i = 0; i < 8; ++i) {
            int v;
            if (!(ls >> comma >> v) || comma != ',' || v < 0 || v > 2) return std::nullopt;
            p.klass[i] = static_cast<std::uint8_t>(v);
        }
        prev_id = p.id;
        out.push_back(p);
    }
    if (out.empty()) return std::nullopt;
    return out;
}

// --- face classification -----------------------------------------------------

namespace {

// A rational grid point on a face: coordinates g over (c0, vertices...) with
// sum(g) = scale, so c = g/scale.
struct GridPoint {
    int scale{};
    std::array<int, 5> g{};  // c0 first; up to 4 face vertices
};

void compositions(int total, int parts, int min_part, std::array<int, 5>& cur, int pos,
                  std::vector<GridPoint>& out, int scale) {
    if (pos == parts - 1) {
        if (total >= min_part) {
            cur[pos] = total;
            GridPoint p;
            p.scale = scale;
            p.g = cur;
            out.push_back(p);
        }
        return;
    }
    for (int v = min_part; v <= total - min_part * (parts - 1 - pos); ++v) {
        cur[pos] = v;
        compositions(total - v, parts, min_part, cur, pos + 1, out, scale);
    }
}

// All strictly interior grid points (every coordinate >= 1/grid), plus the
// exact isotropic points at every c0 = j/grid for faces of dimension >= 2.
std::vector<GridPoint> witness_grid(int nverts, int grid) {
    std::vector<GridPoint> pts;
    std::array<int, 5> cur{};
    compositions(grid, nverts + 1, 1, cur, 0, pts, grid);
    if (nverts >= 2) {
        for (int j = 1; j < grid; ++j) {
            GridPoint p;
            p.scale = grid * nverts;
            p.g[0] = j * nverts;
            for (int k = 1; k <= nverts; ++k) p.g[k] = grid - j;
            pts.push_back(p);
        }
    }
    return pts;
}

std::vector<GridPoint> isotropic_grid(int nverts, int grid) {
    std::vector<GridPoint> pts;
    for (int j = 1; j < grid; ++j) {
        GridPoint p;
        p.scale = grid * nverts;
        p.g[0] = j * nverts;
        for (int k = 1; k <= nverts; ++k) p.g[k] = grid - j;
        pts.push_back(p);
    }
    return pts;
}

long long chsh_max_scaled_ll(const long long e[4]) {
    long long sum = 0, mn = LLONG_MAX;
    int negs = 0, zeros = 0;
    for (int i = 0; i < 4; ++i) {
        long long a = e[i] < 0 ? -e[i] : e[i];
        if (e[i] < 0) ++negs;
        if (e[i] == 0) ++zeros;
        sum += a;
        if (a < mn) mn = a;
    }
    if (zeros == 0 && (negs & 1) == 0) sum -= 2 * mn;
    return sum;
}

}  // namespace

FaceStepEvaluator::FaceStepEvaluator(const FaceSpec& face) : face_(face) {
    support_.push_back(0);
    for (int k : face.vertices) support_.push_back(k);
    for (size_t u = 0; u < support_.size(); ++u) {
        auto corr = correlators4<Rat>(simplex_vertex(support_[u]).e);
        for (int xy = 0; xy < 4; ++xy)
            vert_e4_[u][xy] = static_cast<int>((corr[xy] * Rat(4)).num());
    }
}

void FaceStepEvaluator::load(const Wiring& w) {
    const BlockTable& bt = BlockTable::get();
    for (size_t u = 0; u < support_.size(); ++u)
        for (size_t v = 0; v < support_.size(); ++v) {
            auto e = bt.e4_of_pair(w, support_[u], support_[v]);
            for (int xy = 0; xy < 4; ++xy) basis_e4_[u][v][xy] = e[xy];
        }
}

bool FaceStepEvaluator::increases(const int* g, int scale) const {
    // Correlators of the source point carry a 4*scale scaling, those of the
    // wired point 4*scale^2; NL strictly increases iff chsh(W) > max(2, chsh(p)).
    const size_t k = support_.size();
    long long ew[4] = {0, 0, 0, 0}, ep[4] = {0, 0, 0, 0};
    for (size_t u = 0; u < k; ++u) {
        for (int xy = 0; xy < 4; ++xy) ep[xy] += static_cast<long long>(g[u]) * vert_e4_[u][xy];
        for (size_t v = 0; v < k; ++v) {
            long long gg = static_cast<long long>(g[u]) * g[v];
            for (int xy = 0; xy < 4; ++xy) ew[xy] += gg * basis_e4_[u][v][xy];
        }
    }
    long long cw = chsh_max_scaled_ll(ew);  // chsh(W) * 4*scale^2
    long long cp = chsh_max_scaled_ll(ep);  // chsh(p) * 4*scale
    long long s = scale;
    return cw > std::max(8 * s * s, cp * s);
}

long long FaceStepEvaluator::margin(const int* g, const std::array<std::uint8_t, 8>& klass) const {
    long long m = 0;  // the c0 term vanishes: nl00 = 1 for PR-fixing wirings
    for (size_t k = 0; k < face_.vertices.size(); ++k)
        m += static_cast<long long>(g[k + 1]) * (klass[face_.vertices[k] - 1] - 1);
    return m;
}

bool wiring_closes_face(const FaceSpec& face, const Wiring& w) {
    const BlockTable& bt = BlockTable::get();
    std::array<bool, 9> in_support{};
    in_support[0] = true;
    for (int v : face.vertices) in_support[v] = true;
    std::vector<int> support;
    support.push_back(0);
    for (int k : face.vertices) support.push_back(k);
    for (int v : support)
        for (int u : support) {
            int free_sum = 0;
            for (int i = 0; i < 8; ++i) {
                int idx = kFreeEntryIndex[i];
                int x = (idx / 4) >> 1, y = (idx / 4) & 1;
                int q = bt.block(w.coupler_at(false, x), w.coupler_at(true, y), v, u)[idx % 4];
                if (q != 0 && !in_support[i + 1]) return false;
                free_sum += q;
            }
            if (free_sum > 4) return false;  // c0 would be negative
        }
    return true;
}

bool wiring_distills_face(const FaceSpec& face, const Wiring& w, int grid) {
    FaceStepEvaluator ck(face);
    ck.load(w);
    for (const auto& p : witness_grid(face.dim(), grid))
        if (!ck.increases(p.g.data(), p.scale)) return false;
    return true;
}

FaceReport classify_face(const FaceSpec& face, const std::vector<WiringProfile>& profiles,
                         int grid) {
    if (face.dim() > 4) throw std::invalid_argument("classify_face: dimension must be <= 4");
    FaceReport rep;
    rep.face = face;

    FaceStepEvaluator ck(face);
    const auto grid_pts = witness_grid(face.dim(), grid);
    const auto iso_pts = face.dim() >= 2 ? isotropic_grid(face.dim(), grid)
                                         : witness_grid(1, grid);

    // Whole-face witnesses: the face condition (every vertex class >= 1, one
    // equal to 2) guarantees a positive margin on the interior; the actual
    // NL increase is then verified on every grid point.
    for (const auto& prof : profiles) {
        bool all_ge1 = true, any2 = false;
        for (int k : face.vertices) {
            all_ge1 = all_ge1 && prof.klass[k - 1] >= 1;
            any2 = any2 || prof.klass[k - 1] == 2;
        }
        if (!(all_ge1 && any2)) continue;
        ck.load(Wiring::from_id(prof.id));
        bool ok = true;
        for (const auto& p : grid_pts)
            if (!ck.increases(p.g.data(), p.scale)) {
                ok = false;
                break;
            }
        if (ok) rep.witness_ids.push_back(prof.id);
    }
    if (!rep.witness_ids.empty()) rep.single_wiring_witness = rep.witness_ids.front();

    // Isotropic line: the margin there does not depend on c0, so a wiring
    // either covers the whole line or none of it.
    if (rep.single_wiring_witness) {
        rep.isotropic_distillable = true;
    } else {
        for (const auto& prof : profiles) {
            int cls_sum = 0;
            for (int k : face.vertices) cls_sum += prof.klass[k - 1] - 1;
            if (cls_sum <= 0) continue;
            ck.load(Wiring::from_id(prof.id));
            bool ok = true;
            for (const auto& p : iso_pts)
                if (!ck.increases(p.g.data(), p.scale)) {
                    ok = false;
                    break;
                }
            if (ok) {
                rep.isotropic_distillable = true;
                break;
            }
        }
    }

    // Pointwise: every interior grid point must admit some wiring with a
    // positive margin and a verified strict NL increase.
    if (rep.single_wiring_witness) {
        rep.pointwise_distillable = true;
    } else {
        std::vector<bool> done(grid_pts.size(), false);
        size_t remaining = grid_pts.size();
        for (const auto& prof : profiles) {
            if (remaining == 0) break;
            // the margin can only be positive when some face vertex has class 2
            bool has2 = false;
            for (int k : face.vertices) has2 = has2 || prof.klass[k - 1] == 2;
            if (!has2) continue;
            bool loaded = false;
            for (size_t i = 0; i < grid_pts.size(); ++i) {
                if (done[i] || ck.margin(grid_pts[i].g.data(), prof.klass) <= 0) continue;
                if (!loaded) {
                    ck.load(Wiring::from_id(prof.id));
                    loaded = true;
                }
                if (ck.increases(grid_pts[i].g.data(), grid_pts[i].scale)) {
                    done[i] = true;
                    --remaining;
                }
            }
        }
        rep.pointwise_distillable = remaining == 0;
        if (remaining != 0) {
            for (size_t i = 0; i < grid_pts.size(); ++i)
                if (!done[i]) {
                    const auto& p = grid_pts[i];
                    std::ostringstream os;
                    os << "no PR-fixing wiring distills the point (";
                    for (size_t u = 0; u < face.vertices.size() + 1; ++u) {
                        if (u) os << ",";
                        os << p.g[u] << "/" << p.scale;
                    }
                    os << "); ";
                    rep.notes += os.str();
                    break;
                }
        }
    }

    // Witness wirings that also map the whole face into itself; only those
    // give an in-face quadratic flow that converges to PR.
    for (std::uint64_t id : rep.witness_ids)
        if (wiring_closes_face(face, Wiring::from_id(id))) rep.closed_within_face.push_back(id);

    std::ostringstream os;
    os << rep.witness_ids.size() << " whole-face witness wiring(s); "
       << rep.closed_within_face.size() << " face-closing wiring(s)";
    rep.notes += os.str();
    return rep;
}

std::vector<FaceSpec> faces_of_dim(int dim) {
    if (dim < 1 || dim > 8) throw std::invalid_argument("faces_of_dim: dimension must be in 1..8");
    std::vector<FaceSpec> out;
    std::vector<int> idx(dim);
    for (int i = 0; i < dim; ++i) idx[i] = i + 1;
    for (;;) {
        out.push_back(FaceSpec{idx});
        int k = dim - 1;
        while (k >= 0 && idx[k] == 8 - (dim - 1 - k)) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < dim; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

}  // namespace nlsd
