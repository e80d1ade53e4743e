#include "nlsd/protocol.hpp"

#include <cmath>
#include <sstream>

namespace nlsd {

BigRat big_of(const Rat& r) { return BigRat(r.num(), r.den()); }

BigBox big_box(const Box& b) {
    BigBox out;
    for (int i = 0; i < 16; ++i) out[i] = big_of(b.e[i]);
    return out;
}

double big_to_double(const BigRat& v) { return v.convert_to<double>(); }

namespace {

const BigBox& big_pr() {
    static const BigBox pr = big_box(pr_box(0, 0, 0));
    return pr;
}

BigRat big_abs(const BigRat& v) { return v < 0 ? BigRat(-v) : v; }

struct StepDiag {
    TrajStep step;
    bool converged{};
};

StepDiag diag_exact(int n, const BigBox& box, const BigRat& tol,
                    std::optional<std::array<BigRat, 9>>& coeffs_out) {
    StepDiag d;
    d.step.n = n;
    auto corr = correlators4<BigRat>(box);
    BigRat chsh = chsh_max_of(corr);
    BigRat nlv = nl_of(corr);
    BigRat uff = uffink_of(corr);
    d.step.chsh_max = big_to_double(chsh);
    d.step.nl = big_to_double(nlv);
    d.step.uffink_lhs = big_to_double(uff);
    d.step.cc_trivial = chsh >= 0 && BigRat(3) * chsh * chsh >= BigRat(32);
    d.step.uffink_violated = uff > BigRat(4);

    BigRat l1(0);
    for (int i = 0; i < 16; ++i) l1 += big_abs(box[i] - big_pr()[i]);
    d.step.l1_to_pr = big_to_double(l1);
    d.converged = l1 < tol;

    BigRat free_sum(0);
    std::array<BigRat, 9> c{};
    for (int i = 0; i < 8; ++i) {
        c[i + 1] = box[kFreeEntryIndex[i]];
        free_sum += c[i + 1];
    }
    c[0] = BigRat(1) - free_sum;
    d.step.in_simplex = c[0] >= 0;
    if (d.step.in_simplex) {
        for (int i = 0; i < 9; ++i) d.step.coeffs[i] = big_to_double(c[i]);
        coeffs_out = c;
    } else {
        coeffs_out = std::nullopt;
    }
    return d;
}

StepDiag diag_float(int n, const std::array<double, 16>& box) {
    StepDiag d;
    d.step.n = n;
    auto corr = correlators4<double>(box);
    double chsh = chsh_max_of(corr);
    d.step.chsh_max = chsh;
    d.step.nl = nl_of(corr);
    d.step.uffink_lhs = uffink_of(corr);
    d.step.cc_trivial = chsh >= 0 && 3.0 * chsh * chsh >= 32.0;
    d.step.uffink_violated = d.step.uffink_lhs > 4.0;

    static const std::array<double, 16> pr = box_cast<double>(pr_box(0, 0, 0));
    double l1 = 0;
    for (int i = 0; i < 16; ++i) l1 += std::abs(box[i] - pr[i]);
    d.step.l1_to_pr = l1;

    double free_sum = 0;
    for (int i = 0; i < 8; ++i) {
        d.step.coeffs[i + 1] = box[kFreeEntryIndex[i]];
        free_sum += box[kFreeEntryIndex[i]];
    }
    d.step.coeffs[0] = 1.0 - free_sum;
    d.step.in_simplex = d.step.coeffs[0] >= -1e-12;
    return d;
}

void renormalize_blocks(std::array<double, 16>& box) {
    for (int blk = 0; blk < 4; ++blk) {
        double s = box[4 * blk] + box[4 * blk + 1] + box[4 * blk + 2] + box[4 * blk + 3];
        if (s > 0)
            for (int k = 0; k < 4; ++k) box[4 * blk + k] /= s;
    }
}

// NL gain <= tol for this many consecutive steps counts as a stall.
constexpr int kStallWindow = 3;

}  // namespace

Trajectory iterate(const Wiring& w, const Box& start, const IterateParams& params) {
    if (find_violation(start.e)) throw std::invalid_argument("iterate: start box is not a valid NS box");
    if (params.n_max < 0) throw std::invalid_argument("iterate: negative iteration cap");
    if (params.mode == IterMode::exact && params.n_max > 16)
        throw std::invalid_argument("iterate: exact mode is capped at 16 iterations");

    Trajectory traj;
    traj.mode = params.mode;

    if (params.mode == IterMode::exact) {
        BigRat tol;
        {
            // The double tol is converted exactly; trajectories compare
            // against precisely the documented threshold.
            tol = BigRat(params.tol);
        }
        BigBox cur = big_box(start);
        int flat = 0;
        double prev_nl = 0;
        for (int n = 0;; ++n) {
            std::optional<std::array<BigRat, 9>> coeffs;
            StepDiag d = diag_exact(n, cur, tol, coeffs);
            traj.steps.push_back(d.step);
            traj.exact_boxes.push_back(cur);
            traj.exact_coeffs.push_back(coeffs);
            if (d.converged) {
                traj.converged_at = n;
                break;
            }
            if (n > 0) {
                flat = d.step.nl - prev_nl <= params.tol ? flat + 1 : 0;
                if (flat >= kStallWindow) {
                    traj.stalled_at = n;
                    break;
                }
            }
            prev_nl = d.step.nl;
            if (n == params.n_max) break;
            cur = apply_wiring_t<BigRat>(w, cur, cur);
        }
        return traj;
    }

    std::array<double, 16> cur = box_cast<double>(start);
    int flat = 0;
    double prev_nl = 0;
    for (int n = 0;; ++n) {
        StepDiag d = diag_float(n, cur);
        traj.steps.push_back(d.step);
        if (d.step.l1_to_pr < params.tol) {
            traj.converged_at = n;
            break;
        }
        if (n > 0) {
            flat = d.step.nl - prev_nl <= params.tol ? flat + 1 : 0;
            if (flat >= kStallWindow) {
                traj.stalled_at = n;
                break;
            }
        }
        prev_nl = d.step.nl;
        if (n == params.n_max) break;
        cur = apply_wiring_t<double>(w, cur, cur);
        renormalize_blocks(cur);
    }
    return traj;
}

Trajectory iterate(const Wiring& w, const NLSPoint& start, const IterateParams& params) {
    Rat sum = start.c0;
    if (start.c0.sign() < 0) throw std::invalid_argument("iterate: negative weight in start point");
    for (const Rat& c : start.c) {
        if (c.sign() < 0) throw std::invalid_argument("iterate: negative weight in start point");
        sum += c;
    }
    if (sum != Rat(1)) throw std::invalid_argument("iterate: start point weights must sum to 1");
    return iterate(w, reconstruct(start), params);
}

BigRat closed_form_1d(const Rat& c0, int n) {
    if (c0.sign() < 0 || c0 > Rat(1)) throw std::invalid_argument("closed_form_1d: c0 outside [0,1]");
    if (n < 0 || n > 20) throw std::invalid_argument("closed_form_1d: n outside 0..20");
    BigRat t = BigRat(1) - big_of(c0);
    for (int k = 0; k < n; ++k) t *= t;
    return BigRat(1) - t;
}

Formula1DReport verify_distillation_formula_1d(const std::vector<Rat>& samples) {
    Formula1DReport rep;
    for (int i = 1; i <= 8; ++i) {
        std::string name = "table3:L" + std::to_string(i);
        Wiring w = *parse_wiring(name);
        for (const Rat& c0 : samples) {
            if (c0.sign() <= 0 || c0 >= Rat(1)) {
                rep.ok = false;
                rep.detail += "sample outside (0,1); ";
                continue;
            }
            Box p = mix({{c0, simplex_vertex(0)}, {Rat(1) - c0, simplex_vertex(i)}});
            Rat got = nl(apply_wiring(w, p, p));
            Rat want = c0 * (Rat(2) - c0);
            if (got != want) {
                rep.ok = false;
                rep.detail += "face {L" + std::to_string(i) + "} at c0=" + c0.str() + ": nl=" +
                              got.str() + " expected " + want.str() + "; ";
            }
        }
    }
    return rep;
}

FlowField flow_field(const FaceSpec& face, const Wiring& w, int grid_n) {
    if (face.dim() != 2) throw std::invalid_argument("flow_field: face must be two-dimensional");
    if (grid_n < 1) throw std::invalid_argument("flow_field: grid must be positive");
    auto flow = face_closure(face, w);
    if (!flow) throw face_not_closed_error();

    FlowField out;
    out.face = face;
    out.wiring_id = w.id();
    out.grid = grid_n;

    const int vi = face.vertices[0], vj = face.vertices[1];
    auto corr_pr = correlators4<Rat>(simplex_vertex(0).e);
    auto corr_i = correlators4<Rat>(simplex_vertex(vi).e);
    auto corr_j = correlators4<Rat>(simplex_vertex(vj).e);

    for (int gi = 0; gi <= grid_n; ++gi)
        for (int gj = 0; gj + gi <= grid_n; ++gj) {
            Rat ci(gi, grid_n), cj(gj, grid_n);
            Rat c0 = Rat(1) - ci - cj;
            auto next = flow->step({c0, ci, cj});
            std::array<Rat, 4> corr;
            for (int xy = 0; xy < 4; ++xy)
                corr[xy] = c0 * corr_pr[xy] + ci * corr_i[xy] + cj * corr_j[xy];
            FlowRecord rec;
            rec.ci = ci.to_double();
            rec.cj = cj.to_double();
            rec.dci = (next[1] - ci).to_double();
            rec.dcj = (next[2] - cj).to_double();
            rec.nl = nl_of(corr).to_double();
            rec.uffink_lhs = uffink_of(corr).to_double();
            out.records.push_back(rec);
        }
    return out;
}

Crossings threshold_crossings(const Trajectory& traj) {
    Crossings c;
    for (const auto& s : traj.steps) {
        if (!c.cc_trivial && s.cc_trivial) c.cc_trivial = s.n;
        if (!c.uffink_violation && s.uffink_violated) c.uffink_violation = s.n;
    }
    c.converged = traj.converged_at;
    return c;
}

}  // namespace nlsd
