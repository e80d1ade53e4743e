// Acceptance suite: reproduces the published counts, tables and protocol
// behavior end to end and prints one PASS/FAIL line per criterion.
//
// Exit code is the number of failed criteria.

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nlsd/block_table.hpp"
#include "nlsd/distill.hpp"
#include "nlsd/protocol.hpp"
#include "nlsd/sweep.hpp"
#include "test_util.hpp"

using namespace nlsd;
using testutil::random_nls_point;
using testutil::random_ns_box;

namespace {

struct Suite {
    int failures = 0;
    void report(int num, const char* name, bool ok, const std::string& detail = "") {
        std::printf("CRITERION %2d %s: %s%s%s\n", num, ok ? "PASS" : "FAIL", name,
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

const std::vector<std::vector<int>> kDistillable2D = {
    {1, 2}, {1, 3}, {1, 5}, {2, 4}, {2, 6}, {3, 4},
    {3, 8}, {4, 7}, {5, 6}, {5, 7}, {6, 8}, {7, 8}};
const std::vector<std::vector<int>> kDistillable3D = {
    {1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {1, 2, 6}, {1, 3, 4}, {1, 5, 6},
    {2, 3, 4}, {2, 5, 6}, {3, 4, 7}, {3, 4, 8}, {3, 7, 8}, {4, 7, 8},
    {5, 6, 7}, {5, 6, 8}, {5, 7, 8}, {6, 7, 8}};
const std::vector<std::vector<int>> kUffinkCompatible2D = {
    {1, 3}, {1, 4}, {1, 7}, {1, 8}, {2, 3}, {2, 4}, {2, 7}, {2, 8},
    {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 7}, {5, 8}, {6, 7}, {6, 8}};
const std::vector<std::vector<int>> kUffinkDistillable2D = {{1, 3}, {2, 4}, {5, 7}, {6, 8}};

std::string table4_name(const std::vector<int>& face) {
    return "table4:L" + std::to_string(face[0]) + "L" + std::to_string(face[1]);
}

NLSPoint make_point(const std::vector<int>& verts, const std::vector<Rat>& weights) {
    NLSPoint pt;
    pt.c0 = weights[0];
    for (size_t k = 0; k < verts.size(); ++k) pt.c[verts[k] - 1] = weights[k + 1];
    return pt;
}

// All integer compositions (g0,...,gk) of `total` with g0 >= min_c0.
std::vector<std::vector<int>> closed_grid(int nverts, int total, int min_c0) {
    std::vector<std::vector<int>> pts;
    std::vector<int> cur(nverts + 1, 0);
    std::function<void(int, int)> rec = [&](int pos, int rest) {
        if (pos == nverts) {
            cur[pos] = rest;
            pts.push_back(cur);
            return;
        }
        int lo = pos == 0 ? min_c0 : 0;
        for (int v = lo; v <= rest; ++v) {
            cur[pos] = v;
            rec(pos + 1, rest - v);
        }
    };
    rec(0, total);
    return pts;
}

}  // namespace

int main() {
    Suite suite;
    const int threads = default_threads();
    const Box PR = pr_box(0, 0, 0);
    const BlockTable& blocks = BlockTable::get();

    // ---- 1: wiring-universe counts -----------------------------------------
    {
        std::uint64_t total = parallel_sweep<std::uint64_t>(
            0, kTotalWirings, threads, 256,
            [](std::uint64_t lo, std::uint64_t hi) {
                std::uint64_t n = 0;
                WiringRange range(lo, hi);
                for (auto it = range.begin(); it != range.end(); ++it) ++n;
                return n;
            },
            [](std::uint64_t& acc, std::uint64_t&& c) { acc += c; });
        auto pr_ids = pr_fixing_wirings(threads);
        std::ostringstream os;
        os << "enumerated " << total << " wirings, " << pr_ids.size() << " fix PR";
        suite.report(1, "wiring-universe counts (45,212,176 / 3152)",
                     total == 45212176ull && pr_ids.size() == 3152, os.str());
    }

    // ---- 2: NL census -------------------------------------------------------
    CensusReport census = nl_value_census(threads, 256);
    {
        bool ok = census.total == kTotalWirings &&
                  census.nl_values(0) == std::vector<std::string>{"0", "1/2", "1"};
        for (int f = 1; f <= 16; ++f)
            ok = ok && census.nl_values(f) == std::vector<std::string>{"0", "1"};
        std::ostringstream os;
        os << "nl(W(PR,PR)) values {";
        for (const auto& v : census.nl_values(0)) os << v << " ";
        os << "}, per-vertex values all {0 1}";
        suite.report(2, "NL value census over all wirings", ok, os.str());
    }
    const std::vector<WiringProfile>& profiles = census.profiles;

    // ---- 3: single-vertex strategies ---------------------------------------
    {
        bool ok = true;
        int min_count = INT_MAX;
        for (int i = 1; i <= 8; ++i) {
            Wiring w = *parse_wiring("table3:L" + std::to_string(i));
            ok = ok && blocks.assemble(w, 0, 0) == PR && blocks.assemble(w, i, 0) == PR &&
                 blocks.assemble(w, 0, i) == PR;
            int count = 0;
            for (const auto& prof : profiles) {
                Wiring pw = Wiring::from_id(prof.id);
                if (blocks.assemble(pw, i, 0) == PR && blocks.assemble(pw, 0, i) == PR) ++count;
            }
            min_count = std::min(min_count, count);
            ok = ok && count >= 8;
        }
        std::ostringstream os;
        os << "every listed strategy maps the PR pairs to PR; fewest per-vertex strategies: "
           << min_count;
        suite.report(3, "listed 1D strategies and their multiplicity", ok, os.str());
    }

    // ---- 4: 1D formula and closed form -------------------------------------
    {
        const std::vector<Rat> samples = {Rat(1, 10), Rat(1, 4), Rat(1, 2), Rat(3, 4)};
        auto formula = verify_distillation_formula_1d(samples);
        bool ok = formula.ok;
        for (int i = 1; i <= 8 && ok; ++i) {
            Wiring w = *parse_wiring("table3:L" + std::to_string(i));
            for (const Rat& c0 : samples) {
                IterateParams params;
                params.mode = IterMode::exact;
                params.n_max = 6;
                params.tol = 0;  // run all six steps even when very close to PR
                auto traj = iterate(w, make_point({i}, {c0, Rat(1) - c0}), params);
                ok = ok && traj.steps.size() == 7;
                for (int n = 0; n <= 6 && ok; ++n) {
                    ok = traj.exact_coeffs[n].has_value() &&
                         (*traj.exact_coeffs[n])[0] == closed_form_1d(c0, n);
                }
            }
        }
        suite.report(4, "1D formula nl = c0(2-c0) and iterate = 1-(1-c0)^(2^n), n <= 6", ok,
                     formula.detail);
    }

    // ---- 5: 2D classification ------------------------------------------------
    std::vector<FaceReport> reports2d;
    {
        std::vector<std::vector<int>> with_witness;
        bool table4_among = true;
        for (const auto& face : faces_of_dim(2)) {
            FaceReport rep = classify_face(face, profiles);
            if (rep.single_wiring_witness) {
                with_witness.push_back(face.vertices);
                std::uint64_t t4 = parse_wiring(table4_name(face.vertices))
                                       ? parse_wiring(table4_name(face.vertices))->id()
                                       : 0;
                if (t4)
                    table4_among = table4_among &&
                                   std::find(rep.witness_ids.begin(), rep.witness_ids.end(), t4) !=
                                       rep.witness_ids.end();
            }
            reports2d.push_back(std::move(rep));
        }
        bool ok = with_witness == kDistillable2D && table4_among;

        // {PR,L7,L8} basis boxes
        BasisTable bt = basis_table(*parse_wiring("table4:L7L8"));
        Box L7 = local_vertex(7), L8 = local_vertex(8);
        Box half = mix({{Rat(1, 2), L7}, {Rat(1, 2), L8}});
        ok = ok && bt.boxes[0][0] == PR && bt.boxes[0][7] == PR && bt.boxes[7][0] == PR &&
             bt.boxes[0][8] == PR && bt.boxes[8][0] == half && bt.boxes[7][7] == L7 &&
             bt.boxes[8][8] == L7 && bt.boxes[7][8] == L8 && bt.boxes[8][7] == L8;

        // recurrence against direct box iteration: 10 float steps
        {
            Wiring w = *parse_wiring("table4:L7L8");
            IterateParams fl;
            fl.n_max = 10;
            fl.tol = 0;
            auto traj = iterate(w, make_point({7, 8}, {Rat(1, 10), Rat(9, 20), Rat(9, 20)}), fl);
            std::array<double, 3> c = {0.1, 0.45, 0.45};
            for (int n = 0; n <= 10; ++n) {
                ok = ok && std::abs(traj.steps[n].coeffs[0] - c[0]) <= 1e-12 &&
                     std::abs(traj.steps[n].coeffs[7] - c[1]) <= 1e-12 &&
                     std::abs(traj.steps[n].coeffs[8] - c[2]) <= 1e-12;
                c = recurrence_step_78<double>(c);
            }
        }
        // and 5 exact steps
        {
            Wiring w = *parse_wiring("table4:L7L8");
            IterateParams ex;
            ex.mode = IterMode::exact;
            ex.n_max = 5;
            auto traj = iterate(w, make_point({7, 8}, {Rat(1, 2), Rat(1, 4), Rat(1, 4)}), ex);
            std::array<BigRat, 3> c = {BigRat(1, 2), BigRat(1, 4), BigRat(1, 4)};
            for (int n = 0; n <= 5; ++n) {
                ok = ok && traj.exact_coeffs[n].has_value() &&
                     (*traj.exact_coeffs[n])[0] == c[0] && (*traj.exact_coeffs[n])[7] == c[1] &&
                     (*traj.exact_coeffs[n])[8] == c[2];
                c = recurrence_step_78<BigRat>(c);
            }
        }
        std::ostringstream os;
        os << with_witness.size() << " faces with a whole-face witness";
        suite.report(5, "2D classification (the 12 listed pairs, basis boxes, recurrence)", ok,
                     os.str());
    }

    // ---- 6: convergence (and CC crossings for criterion 10) -----------------
    bool cc_recorded_for_all_converging = true;
    {
        int max_iter = -1, over30 = 0, unconverged60 = 0, total_pts = 0;
        for (const auto& face : kDistillable2D) {
            Wiring w = *parse_wiring(table4_name(face));
            for (const auto& g : closed_grid(2, 20, 1)) {
                IterateParams fl;
                fl.n_max = 60;
                fl.tol = 1e-9;
                auto traj = iterate(
                    w, make_point(face, {Rat(g[0], 20), Rat(g[1], 20), Rat(g[2], 20)}), fl);
                ++total_pts;
                if (!traj.converged_at) {
                    ++unconverged60;
                    continue;
                }
                max_iter = std::max(max_iter, *traj.converged_at);
                if (*traj.converged_at > 30) ++over30;
                auto cr = threshold_crossings(traj);
                if (!cr.cc_trivial || *cr.cc_trivial > *traj.converged_at)
                    cc_recorded_for_all_converging = false;
            }
        }
        bool ok2d = over30 == 0 && unconverged60 == 0;

        int worst1d = -1;
        bool ok1d = true;
        for (int i = 1; i <= 8; ++i) {
            Wiring w = *parse_wiring("table3:L" + std::to_string(i));
            for (int g0 = 2; g0 <= 20; ++g0) {
                IterateParams fl;
                fl.n_max = 10;
                auto traj = iterate(w, make_point({i}, {Rat(g0, 20), Rat(20 - g0, 20)}), fl);
                int first = -1;
                for (const auto& s : traj.steps)
                    if (s.nl >= 0.999) {
                        first = s.n;
                        break;
                    }
                if (first < 0)
                    ok1d = false;
                else
                    worst1d = std::max(worst1d, first);
            }
        }
        std::ostringstream os;
        os << "2D: " << over30 << "/" << total_pts << " grid points need more than 30 iterations"
           << " (worst " << max_iter << ", all converge within 60); 1D: NL >= 0.999 by step "
           << worst1d;
        suite.report(6, "convergence within 30 iterations (2D, tol 1e-9) and 10 iterations (1D)",
                     ok2d && ok1d, os.str());
    }

    // ---- 7: 3D classification -------------------------------------------------
    {
        std::vector<std::vector<int>> with_witness;
        bool closures_empty = true;
        bool isotropic_fails = true;
        bool closing_never_distills = true;
        for (const auto& face : faces_of_dim(3)) {
            FaceReport rep = classify_face(face, profiles);
            if (rep.single_wiring_witness) with_witness.push_back(face.vertices);
            closures_empty = closures_empty && rep.closed_within_face.empty();
            bool listed = std::find(kDistillable3D.begin(), kDistillable3D.end(),
                                    face.vertices) != kDistillable3D.end();
            if (!listed) {
                // the isotropic margin is scale-free: sum of (class - 1)
                for (const auto& prof : profiles) {
                    int s = 0;
                    for (int k : face.vertices) s += prof.klass[k - 1] - 1;
                    if (s > 0) isotropic_fails = false;
                }
            }
            // any wiring that maps the face into itself must not distill any
            // of its points (the closing wirings are the pass-through kind)
            FaceStepEvaluator ck(face);
            for (const auto& prof : profiles) {
                if (!wiring_closes_face(face, Wiring::from_id(prof.id))) continue;
                ck.load(Wiring::from_id(prof.id));
                for (const auto& g : closed_grid(3, 10, 1))
                    if (ck.increases(g.data(), 10)) closing_never_distills = false;
            }
        }
        bool ok = with_witness == kDistillable3D && closures_empty && isotropic_fails &&
                  closing_never_distills;
        std::ostringstream os;
        os << with_witness.size()
           << " fully distillable triples; non-listed isotropic lines all fail; "
              "no distilling wiring closes a 3D face";
        suite.report(7, "3D classification (the 16 listed triples)", ok, os.str());
    }

    // ---- 8: 4D impossibility ---------------------------------------------------
    {
        bool ok = true;
        for (const auto& face : faces_of_dim(4))
            for (const auto& prof : profiles) {
                int s = 0;
                for (int k : face.vertices) s += prof.klass[k - 1] - 1;
                if (s > 0) ok = false;
            }
        suite.report(8, "4D isotropic points fail the necessary condition for all wirings", ok,
                     "70 faces x 3152 wirings");
    }

    // ---- 9: Uffink regions ------------------------------------------------------
    {
        std::vector<std::vector<int>> compatible;
        const auto grid50 = closed_grid(2, 50, 1);
        for (const auto& face : faces_of_dim(2)) {
            // integer-scaled correlators: vertex correlators are all +-1
            int e4v[3][4];
            for (int u = 0; u < 3; ++u) {
                int vert = u == 0 ? 0 : face.vertices[u - 1];
                auto corr = correlators4<Rat>(simplex_vertex(vert).e);
                for (int xy = 0; xy < 4; ++xy) e4v[u][xy] = static_cast<int>((corr[xy] * Rat(4)).num());
            }
            bool found = false;
            for (const auto& g : grid50) {
                long long e[4];
                for (int xy = 0; xy < 4; ++xy)
                    e[xy] = static_cast<long long>(g[0]) * e4v[0][xy] +
                            static_cast<long long>(g[1]) * e4v[1][xy] +
                            static_cast<long long>(g[2]) * e4v[2][xy];
                long long u = (e[0] + e[2]) * (e[0] + e[2]) + (e[1] - e[3]) * (e[1] - e[3]);
                if (u <= 4LL * (4 * 50) * (4 * 50)) {
                    found = true;
                    break;
                }
            }
            if (found) compatible.push_back(face.vertices);
        }
        bool ok = compatible == kUffinkCompatible2D;

        // the distillable subset of the compatible pairs
        std::vector<std::vector<int>> both;
        for (const auto& rep : reports2d)
            if (rep.single_wiring_witness &&
                std::find(compatible.begin(), compatible.end(), rep.face.vertices) !=
                    compatible.end())
                both.push_back(rep.face.vertices);
        ok = ok && both == kUffinkDistillable2D;

        // trajectory from the {L1,L3} isotropic point at c0 = 1/5
        Wiring w13 = *parse_wiring("table4:L1L3");
        IterateParams ex;
        ex.mode = IterMode::exact;
        ex.n_max = 6;
        auto traj = iterate(w13, make_point({1, 3}, {Rat(1, 5), Rat(2, 5), Rat(2, 5)}), ex);
        auto corr0 = correlators4<BigRat>(traj.exact_boxes[0]);
        auto cr = threshold_crossings(traj);
        ok = ok && uffink_of(corr0) == BigRat(72, 25) && !traj.steps[0].uffink_violated &&
             cr.uffink_violation.has_value();
        std::ostringstream os;
        os << compatible.size() << " Uffink-compatible pairs, " << both.size()
           << " of them distillable; {L1,L3} trajectory starts at 72/25 and crosses at step "
           << (cr.uffink_violation ? *cr.uffink_violation : -1);
        suite.report(9, "Uffink-compatible pairs (16) and distillable subset (4)", ok, os.str());
    }

    // ---- 10: CC threshold ----------------------------------------------------------
    {
        // brute-force oracle: exact box iteration on the {L7} face from c0=1/10
        Wiring w = *parse_wiring("table3:L7");
        IterateParams ex;
        ex.mode = IterMode::exact;
        ex.n_max = 6;
        auto traj = iterate(w, make_point({7}, {Rat(1, 10), Rat(9, 10)}), ex);
        auto cr = threshold_crossings(traj);
        bool ok = cr.cc_trivial.has_value() && *cr.cc_trivial == 4 &&
                  cc_recorded_for_all_converging;
        std::ostringstream os;
        os << "oracle crossing at step " << (cr.cc_trivial ? *cr.cc_trivial : -1)
           << " (frozen expected 4); every converging trajectory crossed before convergence";
        suite.report(10, "communication-complexity threshold crossings", ok, os.str());
    }

    // ---- 11: property suites ---------------------------------------------------------
    {
        std::mt19937 rng(20260810);
        bool ns_ok = true;
        std::uint64_t ns_cases = 0;
        for (int ca = 0; ca < 82 && ns_ok; ++ca)
            for (int cb = 0; cb < 82 && ns_ok; ++cb)
                for (int rep = 0; rep < 2; ++rep) {
                    Wiring w{{ca, static_cast<int>(rng() % 82)},
                             {cb, static_cast<int>(rng() % 82)}};
                    Box p = random_ns_box(rng, 16), q = random_ns_box(rng, 16);
                    if (find_violation(apply_wiring(w, p, q).e)) ns_ok = false;
                    ++ns_cases;
                }

        bool bilin_ok = true;
        for (int t = 0; t < 60 && bilin_ok; ++t) {
            Wiring w = Wiring::from_id(rng() % kTotalWirings);
            Box p1 = random_ns_box(rng, 8), p2 = random_ns_box(rng, 8), q = random_ns_box(rng, 8);
            Rat lam(static_cast<int>(rng() % 9), 8);
            Box mixed = mix({{lam, p1}, {Rat(1) - lam, p2}});
            bilin_ok = apply_wiring(w, mixed, q) ==
                           mix({{lam, apply_wiring(w, p1, q)},
                                {Rat(1) - lam, apply_wiring(w, p2, q)}}) &&
                       apply_wiring(w, q, mixed) ==
                           mix({{lam, apply_wiring(w, q, p1)},
                                {Rat(1) - lam, apply_wiring(w, q, p2)}});
        }

        // locality closure over all 82^4 wirings and all vertex pairs, via the
        // memoized blocks: every wired local pair is a deterministic product
        // box (a-side fixed by Alice's coupler, b-side by Bob's), and every
        // product sign pattern has CHSH exactly 2.
        bool local_ok = true;
        for (int i = 1; i <= 8 && local_ok; ++i)
            for (int j = 1; j <= 8 && local_ok; ++j) {
                std::vector<int> bout(82, -1);
                for (int ca = 0; ca < 82 && local_ok; ++ca) {
                    int aout = -1;
                    for (int cb = 0; cb < 82; ++cb) {
                        const std::int8_t* blk = blocks.block(ca, cb, i, j);
                        int hit = -1;
                        for (int k = 0; k < 4; ++k)
                            if (blk[k] == 4) hit = k;
                        int mass = blk[0] + blk[1] + blk[2] + blk[3];
                        if (hit < 0 || mass != 4) {
                            local_ok = false;
                            break;
                        }
                        int a = hit >> 1, b = hit & 1;
                        if (aout < 0) aout = a;
                        if (a != aout) local_ok = false;
                        if (bout[cb] < 0) bout[cb] = b;
                        if (b != bout[cb]) local_ok = false;
                    }
                }
            }
        for (int sa0 = -1; sa0 <= 1 && local_ok; sa0 += 2)
            for (int sa1 = -1; sa1 <= 1; sa1 += 2)
                for (int tb0 = -1; tb0 <= 1; tb0 += 2)
                    for (int tb1 = -1; tb1 <= 1; tb1 += 2) {
                        int chsh4 = chsh_max_scaled(4 * sa0 * tb0, 4 * sa0 * tb1, 4 * sa1 * tb0,
                                                    4 * sa1 * tb1);
                        if (chsh4 != 8) local_ok = false;  // CHSH exactly 2
                    }
        for (int t = 0; t < 500 && local_ok; ++t) {
            Wiring w = Wiring::from_id(rng() % kTotalWirings);
            int i = 1 + static_cast<int>(rng() % 8), j = 1 + static_cast<int>(rng() % 8);
            local_ok = nl(apply_wiring(w, local_vertex(i), local_vertex(j))) == Rat(0);
        }

        bool round_ok = true;
        for (int t = 0; t < 500 && round_ok; ++t) {
            NLSPoint pt = random_nls_point(rng);
            auto back = decompose(reconstruct(pt));
            round_ok = back.point && back.point->c0 == pt.c0 && back.point->c == pt.c;
        }

        // the wired-NL upper bound from the basis classes, on sampled points
        bool bound_ok = true;
        for (int t = 0; t < 40 && bound_ok; ++t) {
            const auto& prof = profiles[rng() % profiles.size()];
            Wiring w = Wiring::from_id(prof.id);
            BasisTable bt = basis_table(w);
            for (int s = 0; s < 10 && bound_ok; ++s) {
                NLSPoint pt = random_nls_point(rng, 16);
                Box p = reconstruct(pt);
                Rat bound = pt.c0 * pt.c0 * bt.nl00;
                for (int k = 1; k <= 8; ++k)
                    bound += pt.c0 * pt.c[k - 1] * Rat(bt.klass[k - 1]);
                bound_ok = nl(apply_wiring(w, p, p)) <= bound;
            }
        }

        // the necessary condition is sound: wherever NL strictly increases,
        // the margin is positive (exhaustive: 3152 wirings x 1/10 grids of
        // every face of dimension <= 3)
        bool sound_ok = true;
        for (int dim = 1; dim <= 3 && sound_ok; ++dim) {
            auto faces = faces_of_dim(dim);
            auto pts = closed_grid(dim, 10, 1);
            std::uint64_t bad = parallel_sweep<std::uint64_t>(
                0, faces.size(), threads, static_cast<int>(faces.size()),
                [&](std::uint64_t lo, std::uint64_t hi) {
                    std::uint64_t violations = 0;
                    for (std::uint64_t fi = lo; fi < hi; ++fi) {
                        FaceStepEvaluator ck(faces[fi]);
                        for (const auto& prof : profiles) {
                            ck.load(Wiring::from_id(prof.id));
                            for (const auto& g : pts)
                                if (ck.margin(g.data(), prof.klass) <= 0 &&
                                    ck.increases(g.data(), 10))
                                    ++violations;
                        }
                    }
                    return violations;
                },
                [](std::uint64_t& acc, std::uint64_t&& c) { acc += c; });
            sound_ok = bad == 0;
        }

        // byte-identical census across partitionings
        CensusReport c1 = nl_value_census(threads, 1);
        CensusReport c64 = nl_value_census(threads, 64);
        bool sweep_ok = c1.serialize() == c64.serialize() &&
                        census.serialize() == c64.serialize();

        bool ok = ns_ok && bilin_ok && local_ok && round_ok && bound_ok && sound_ok && sweep_ok;
        std::ostringstream os;
        os << ns_cases << " NS-closure cases; bilinearity " << (bilin_ok ? "exact" : "BROKEN")
           << "; locality closure " << (local_ok ? "exhaustive" : "BROKEN") << "; round-trip "
           << (round_ok ? "ok" : "BROKEN") << "; NL bound " << (bound_ok ? "ok" : "BROKEN")
           << "; condition soundness " << (sound_ok ? "ok" : "BROKEN") << "; sweep determinism "
           << (sweep_ok ? "byte-identical" : "BROKEN");
        suite.report(11, "property suites", ok, os.str());
    }

    std::printf("%s (%d criterion%s failed)\n", suite.failures == 0 ? "ALL PASS" : "FAILURES",
                suite.failures, suite.failures == 1 ? "" : "s");
    return suite.failures;
}
