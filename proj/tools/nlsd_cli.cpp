// nlsd: command-line driver for the CHSH box / wiring / distillation toolkit.
//
// Subcommands
//   verify-counts    enumerate all 82^4 wirings, count the PR-fixing ones and
//                    census the NL values of the wired vertex pairs
//   classify-faces   distillability reports for all faces of one dimension
//   distill          iterate p -> W(p,p) with per-step diagnostics
//   flowmap          one-step displacement field over a closed 2D face (CSV)
//   uffink           grid scan of a 2D face for Uffink-satisfying points
//   check-point      validate a box and print its diagnostics
//
// Exit codes: 0 ok, 1 invalid input, 2 reproduction-check mismatch, 3 internal.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nlsd/distill.hpp"
#include "nlsd/protocol.hpp"
#include "nlsd/sweep.hpp"

using nlohmann::ordered_json;
using namespace nlsd;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitInternal = 3;

int fail_input(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return kExitBadInput;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    size_t i = 0;
    while (i < s.size()) {
        size_t j = s.find(',', i);
        if (j == std::string::npos) j = s.size();
        out.push_back(std::stoi(s.substr(i, j - i)));
        i = j + 1;
    }
    return out;
}

std::optional<std::vector<Rat>> parse_rat_list(const std::string& s) {
    std::vector<Rat> out;
    size_t i = 0;
    while (i < s.size()) {
        size_t j = s.find(',', i);
        if (j == std::string::npos) j = s.size();
        auto r = parse_rational(s.substr(i, j - i));
        if (!r) return std::nullopt;
        out.push_back(*r);
        i = j + 1;
    }
    return out;
}

ordered_json face_json(const FaceSpec& f) {
    ordered_json a = ordered_json::array();
    for (int v : f.vertices) a.push_back(v);
    return a;
}

// Fixture lists quoted for the --check mode.
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

std::vector<WiringProfile> profiles_with_cache(const std::string& cache_path, int threads) {
    if (!cache_path.empty()) {
        if (auto cached = load_profiles_csv(cache_path)) return std::move(*cached);
    }
    auto profiles = pr_fixing_profiles(threads);
    if (!cache_path.empty()) save_profiles_csv(cache_path, profiles);
    return profiles;
}

// --- verify-counts ----------------------------------------------------------

int cmd_verify_counts(int threads, const std::string& cache_path) {
    CensusReport rep = nl_value_census(threads);

    auto values_json = [&](int f) {
        ordered_json a = ordered_json::array();
        for (const auto& v : rep.nl_values(f)) a.push_back(v);
        return a;
    };
    auto union_values = [&](int lo, int hi) {
        std::vector<std::string> u;
        for (int f = lo; f <= hi; ++f)
            for (const auto& v : rep.nl_values(f))
                if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
        return u;
    };

    auto vals00 = rep.nl_values(0);
    auto vals_pr_li = union_values(1, 8);
    auto vals_li_pr = union_values(9, 16);

    bool ok = rep.total == kTotalWirings && rep.pr_fixing == 3152 &&
              vals00 == std::vector<std::string>{"0", "1/2", "1"} &&
              vals_pr_li == std::vector<std::string>{"0", "1"} &&
              vals_li_pr == std::vector<std::string>{"0", "1"};

    ordered_json out;
    out["total_wirings"] = rep.total;
    out["pr_fixing"] = rep.pr_fixing;
    out["nl00_values"] = values_json(0);
    ordered_json counts00 = ordered_json::object();
    for (const auto& [k, n] : rep.nl_counts(0)) counts00[k] = n;
    out["nl00_counts"] = counts00;
    ordered_json a1 = ordered_json::array(), a2 = ordered_json::array();
    for (const auto& v : vals_pr_li) a1.push_back(v);
    for (const auto& v : vals_li_pr) a2.push_back(v);
    out["nl_pr_li_values"] = a1;
    out["nl_li_pr_values"] = a2;
    out["expected"] = {{"total_wirings", kTotalWirings},
                       {"pr_fixing", 3152},
                       {"nl00_values", {"0", "1/2", "1"}},
                       {"nl_pr_li_values", {"0", "1"}},
                       {"nl_li_pr_values", {"0", "1"}}};
    out["match"] = ok;
    std::cout << out.dump(2) << "\n";

    if (!cache_path.empty() && !save_profiles_csv(cache_path, rep.profiles)) {
        std::cerr << "error: cannot write cache file " << cache_path << "\n";
        return kExitInternal;
    }
    return ok ? kExitOk : kExitMismatch;
}

// --- classify-faces ----------------------------------------------------------

ordered_json report_json(const FaceReport& rep) {
    ordered_json j;
    j["face"] = face_json(rep.face);
    j["pointwise_distillable"] = rep.pointwise_distillable;
    if (rep.single_wiring_witness)
        j["single_wiring_witness"] = *rep.single_wiring_witness;
    else
        j["single_wiring_witness"] = nullptr;
    j["witness_count"] = rep.witness_ids.size();
    j["isotropic_distillable"] = rep.isotropic_distillable;
    ordered_json closed = ordered_json::array();
    for (auto id : rep.closed_within_face) closed.push_back(id);
    j["closed_within_face"] = closed;
    j["notes"] = rep.notes;
    return j;
}

int cmd_classify_faces(int dim, bool check, int threads, const std::string& cache_path) {
    if (dim < 1 || dim > 4) return fail_input("--dim must be between 1 and 4");
    auto profiles = profiles_with_cache(cache_path, threads);
    auto faces = faces_of_dim(dim);

    std::vector<FaceReport> reports = parallel_sweep<std::vector<FaceReport>>(
        0, faces.size(), threads, static_cast<int>(faces.size()),
        [&](std::uint64_t lo, std::uint64_t hi) {
            std::vector<FaceReport> part;
            for (std::uint64_t i = lo; i < hi; ++i)
                part.push_back(classify_face(faces[i], profiles));
            return part;
        },
        [](std::vector<FaceReport>& acc, std::vector<FaceReport>&& part) {
            for (auto& r : part) acc.push_back(std::move(r));
        });

    std::vector<std::vector<int>> with_witness;
    for (const auto& r : reports)
        if (r.single_wiring_witness) with_witness.push_back(r.face.vertices);

    ordered_json out;
    out["dim"] = dim;
    out["faces"] = ordered_json::array();
    for (const auto& r : reports) out["faces"].push_back(report_json(r));
    out["fully_distillable_count"] = with_witness.size();

    bool ok = true;
    if (check) {
        std::vector<std::vector<int>> expected;
        if (dim == 1)
            for (int i = 1; i <= 8; ++i) expected.push_back({i});
        else if (dim == 2)
            expected = kDistillable2D;
        else if (dim == 3)
            expected = kDistillable3D;
        ok = with_witness == expected;
        if (dim >= 3) {
            for (const auto& r : reports) ok = ok && r.closed_within_face.empty();
        }
        if (dim == 4) {
            for (const auto& r : reports)
                ok = ok && !r.isotropic_distillable && !r.pointwise_distillable;
        }
        out["check"] = ok;
    }
    std::cout << out.dump(2) << "\n";
    return (!check || ok) ? kExitOk : kExitMismatch;
}

// --- distill -----------------------------------------------------------------

ordered_json step_json(const TrajStep& s) {
    ordered_json j;
    j["n"] = s.n;
    if (s.in_simplex) {
        ordered_json c = ordered_json::array();
        for (double v : s.coeffs) c.push_back(v);
        j["c"] = c;
    } else {
        j["c"] = nullptr;
    }
    j["nl"] = s.nl;
    j["chsh_max"] = s.chsh_max;
    j["uffink_lhs"] = s.uffink_lhs;
    j["cc_trivial"] = s.cc_trivial;
    j["l1_to_pr"] = s.l1_to_pr;
    return j;
}

int cmd_distill(const std::string& face_s, const std::string& point_s,
                const std::string& wiring_s, int iters, double tol, const std::string& mode_s) {
    std::vector<int> face_v;
    try {
        face_v = parse_int_list(face_s);
    } catch (const std::exception&) {
        return fail_input("cannot parse --face");
    }
    FaceSpec face;
    try {
        face = FaceSpec::of(face_v);
    } catch (const std::exception& e) {
        return fail_input(e.what());
    }
    auto point = parse_rat_list(point_s);
    if (!point) return fail_input("cannot parse --point");
    auto w = parse_wiring(wiring_s);
    if (!w) return fail_input("cannot parse --wiring");

    NLSPoint start;
    if (point->size() == 1 && face.dim() == 1) {
        start.c0 = (*point)[0];
        start.c[face.vertices[0] - 1] = Rat(1) - (*point)[0];
    } else if (point->size() == face.vertices.size() + 1) {
        start.c0 = (*point)[0];
        for (size_t k = 0; k < face.vertices.size(); ++k)
            start.c[face.vertices[k] - 1] = (*point)[k + 1];
    } else {
        return fail_input("--point must list c0 followed by one weight per face vertex");
    }

    IterateParams params;
    params.n_max = iters;
    params.tol = tol;
    if (mode_s == "exact")
        params.mode = IterMode::exact;
    else if (mode_s == "float")
        params.mode = IterMode::floating;
    else
        return fail_input("--mode must be exact or float");

    Trajectory traj;
    try {
        traj = iterate(*w, start, params);
    } catch (const std::invalid_argument& e) {
        return fail_input(e.what());
    }
    Crossings cr = threshold_crossings(traj);

    ordered_json out;
    out["face"] = face_json(face);
    out["wiring"] = {{"id", w->id()}, {"spec", wiring_str(*w)}};
    out["mode"] = mode_s;
    out["tol"] = tol;
    out["steps"] = ordered_json::array();
    for (const auto& s : traj.steps) out["steps"].push_back(step_json(s));
    out["converged_at"] = traj.converged_at ? ordered_json(*traj.converged_at) : nullptr;
    out["stalled_at"] = traj.stalled_at ? ordered_json(*traj.stalled_at) : nullptr;
    out["crossings"] = {
        {"cc_trivial", cr.cc_trivial ? ordered_json(*cr.cc_trivial) : nullptr},
        {"uffink_violation", cr.uffink_violation ? ordered_json(*cr.uffink_violation) : nullptr},
        {"converged", cr.converged ? ordered_json(*cr.converged) : nullptr}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

// --- flowmap -----------------------------------------------------------------

int cmd_flowmap(const std::string& face_s, const std::string& wiring_s, int grid,
                const std::string& out_path) {
    std::vector<int> face_v;
    try {
        face_v = parse_int_list(face_s);
    } catch (const std::exception&) {
        return fail_input("cannot parse --face");
    }
    if (face_v.size() != 2) return fail_input("--face must name two vertices");
    auto w = parse_wiring(wiring_s);
    if (!w) return fail_input("cannot parse --wiring");
    if (grid < 1) return fail_input("--grid must be positive");

    FlowField field;
    try {
        field = flow_field(FaceSpec::of(face_v), *w, grid);
    } catch (const face_not_closed_error&) {
        return fail_input("wiring does not close the face");
    } catch (const std::invalid_argument& e) {
        return fail_input(e.what());
    }

    std::ofstream out(out_path, std::ios::trunc);
    if (!out) {
        std::cerr << "error: cannot open " << out_path << "\n";
        return kExitInternal;
    }
    out << "ci,cj,dci,dcj,nl,uffink_lhs\n";
    char buf[200];
    for (const auto& r : field.records) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.ci, r.cj, r.dci,
                      r.dcj, r.nl, r.uffink_lhs);
        out << buf;
    }
    if (!out) {
        std::cerr << "error: write failed for " << out_path << "\n";
        return kExitInternal;
    }

    ordered_json summary;
    summary["face"] = face_json(field.face);
    summary["wiring"] = {{"id", field.wiring_id}, {"spec", wiring_str(*w)}};
    summary["grid"] = field.grid;
    summary["records"] = field.records.size();
    summary["out"] = out_path;
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

// --- uffink ------------------------------------------------------------------

int cmd_uffink(const std::string& face_s, int grid) {
    std::vector<int> face_v;
    try {
        face_v = parse_int_list(face_s);
    } catch (const std::exception&) {
        return fail_input("cannot parse --face");
    }
    if (face_v.size() != 2) return fail_input("--face must name two vertices");
    if (grid < 1) return fail_input("--grid must be positive");
    FaceSpec face = FaceSpec::of(face_v);

    auto corr_pr = correlators4<Rat>(simplex_vertex(0).e);
    auto corr_i = correlators4<Rat>(simplex_vertex(face.vertices[0]).e);
    auto corr_j = correlators4<Rat>(simplex_vertex(face.vertices[1]).e);

    std::uint64_t nonlocal = 0, satisfying = 0;
    std::optional<Rat> min_u;
    for (int g0 = 1; g0 <= grid; ++g0)
        for (int gi = 0; gi + g0 <= grid; ++gi) {
            int gj = grid - g0 - gi;
            Rat c0(g0, grid), ci(gi, grid), cj(gj, grid);
            std::array<Rat, 4> corr;
            for (int xy = 0; xy < 4; ++xy)
                corr[xy] = c0 * corr_pr[xy] + ci * corr_i[xy] + cj * corr_j[xy];
            Rat u = uffink_of(corr);
            ++nonlocal;
            if (u <= Rat(4)) ++satisfying;
            if (!min_u || u < *min_u) min_u = u;
        }

    ordered_json out;
    out["face"] = face_json(face);
    out["grid"] = grid;
    out["nonlocal_grid_points"] = nonlocal;
    out["uffink_satisfying_nonlocal"] = satisfying;
    out["min_uffink_lhs"] = min_u->str();
    out["min_uffink_lhs_value"] = min_u->to_double();
    out["compatible"] = satisfying > 0;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

// --- check-point -------------------------------------------------------------

int cmd_check_point(const std::string& box_s) {
    auto entries = parse_box_entries(box_s);
    if (!entries) {
        std::cerr << "error: --box must list 16 rationals\n";
        return kExitBadInput;
    }
    ordered_json out;
    if (auto err = find_violation(*entries)) {
        out["valid"] = false;
        out["error"] = err->message();
        std::cout << out.dump(2) << "\n";
        return kExitBadInput;
    }
    Box box{*entries};
    PointDiagnostics d = diagnostics(box);
    out["valid"] = true;
    out["nl"] = d.nl.str();
    out["nl_value"] = d.nl.to_double();
    out["chsh_max"] = d.chsh_max.str();
    out["chsh_max_value"] = d.chsh_max.to_double();
    out["uffink_lhs"] = d.uffink_lhs.str();
    out["uffink_lhs_value"] = d.uffink_lhs.to_double();
    out["cc_trivial"] = d.cc_trivial;
    auto dec = decompose(box);
    if (dec.point) {
        ordered_json nls;
        nls["in_simplex"] = true;
        nls["c0"] = dec.point->c0.str();
        ordered_json c = ordered_json::array();
        for (const auto& v : dec.point->c) c.push_back(v.str());
        nls["c"] = c;
        out["nls"] = nls;
    } else {
        out["nls"] = {{"in_simplex", false}, {"free_sum", dec.free_sum.str()}};
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CHSH-scenario box toolkit: deterministic wirings, nonlocality "
                 "distillation search, quantum-void classification"};
    app.require_subcommand(1);
    app.fallthrough();

    int threads = default_threads();
    std::string cache_path;
    bool json_flag = false;
    app.add_option("--threads", threads, "worker thread cap");
    app.add_option("--cache", cache_path, "basis-profile cache file (CSV)");
    app.add_flag("--json", json_flag, "JSON output (the default; accepted for compatibility)");

    auto* sc_counts = app.add_subcommand("verify-counts",
                                         "reproduce the wiring-universe and PR-fixing counts");

    auto* sc_classify = app.add_subcommand("classify-faces",
                                           "distillability of all faces of one dimension");
    int dim = 1;
    bool check = false;
    sc_classify->add_option("--dim", dim, "face dimension (1..4)")->required();
    sc_classify->add_flag("--check", check, "compare against the published lists");

    auto* sc_distill = app.add_subcommand("distill", "iterate p -> W(p,p)");
    std::string face_s, point_s, wiring_s, mode_s = "float";
    int iters = 30;
    double tol = 1e-9;
    sc_distill->add_option("--face", face_s, "face vertices, e.g. 7,8")->required();
    sc_distill->add_option("--point", point_s, "c0 followed by face weights")->required();
    sc_distill->add_option("--wiring", wiring_s, "wiring id, preset or explicit form")->required();
    sc_distill->add_option("--iters", iters, "iteration cap");
    sc_distill->add_option("--tol", tol, "convergence tolerance (L1 to PR)");
    sc_distill->add_option("--mode", mode_s, "exact | float");

    auto* sc_flow = app.add_subcommand("flowmap", "one-step flow field of a closed 2D face");
    std::string f_face, f_wiring, f_out;
    int f_grid = 50;
    sc_flow->add_option("--face", f_face, "two face vertices, e.g. 1,3")->required();
    sc_flow->add_option("--wiring", f_wiring, "wiring id, preset or explicit form")->required();
    sc_flow->add_option("--grid", f_grid, "simplex grid subdivisions");
    sc_flow->add_option("--out", f_out, "output CSV path")->required();

    auto* sc_uffink = app.add_subcommand("uffink", "Uffink scan over a 2D face");
    std::string u_face;
    int u_grid = 50;
    sc_uffink->add_option("--face", u_face, "two face vertices")->required();
    sc_uffink->add_option("--grid", u_grid, "simplex grid subdivisions");

    auto* sc_point = app.add_subcommand("check-point", "validate a box and print diagnostics");
    std::string box_s;
    sc_point->add_option("--box", box_s, "16 entries, each num/den or decimal")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sc_counts->parsed()) return cmd_verify_counts(threads, cache_path);
        if (sc_classify->parsed()) return cmd_classify_faces(dim, check, threads, cache_path);
        if (sc_distill->parsed())
            return cmd_distill(face_s, point_s, wiring_s, iters, tol, mode_s);
        if (sc_flow->parsed()) return cmd_flowmap(f_face, f_wiring, f_grid, f_out);
        if (sc_uffink->parsed()) return cmd_uffink(u_face, u_grid);
        if (sc_point->parsed()) return cmd_check_point(box_s);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitBadInput;
}
