#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nlsd/box.hpp"
#include "nlsd/distill.hpp"
#include "nlsd/wiring.hpp"

namespace nlsd {

// Iterated trajectories square the denominators at every step, which leaves
// 64-bit rationals after three or four iterations. Exact mode therefore runs
// on arbitrary-precision rationals.
using BigRat = boost::multiprecision::cpp_rational;
using BigBox = std::array<BigRat, 16>;

BigRat big_of(const Rat& r);
BigBox big_box(const Box& b);
double big_to_double(const BigRat& v);

class face_not_closed_error : public std::invalid_argument {
public:
    face_not_closed_error() : std::invalid_argument("wiring does not close the face") {}
};

enum class IterMode { exact, floating };

struct TrajStep {
    int n{};
    bool in_simplex{};
    std::array<double, 9> coeffs{};  // c0, c1..c8; meaningful iff in_simplex
    double nl{}, chsh_max{}, uffink_lhs{}, l1_to_pr{};
    bool cc_trivial{};
    bool uffink_violated{};
};

struct Trajectory {
    IterMode mode{IterMode::floating};
    std::vector<TrajStep> steps;
    std::optional<int> converged_at;  // first n with ||p_n - PR||_1 < tol
    std::optional<int> stalled_at;    // NL gain <= tol for three steps running

    // exact-mode records for exact comparisons; empty in float mode
    std::vector<BigBox> exact_boxes;
    std::vector<std::optional<std::array<BigRat, 9>>> exact_coeffs;
};

struct IterateParams {
    int n_max = 30;
    double tol = 1e-9;
    IterMode mode = IterMode::floating;
};

// Repeated application of p -> W(p,p) with per-step diagnostics. Exact mode
// caps n_max at 16: denominator size doubles per step and anything useful
// about an exact trajectory shows within a handful of iterations.
Trajectory iterate(const Wiring& w, const Box& start, const IterateParams& params);
Trajectory iterate(const Wiring& w, const NLSPoint& start, const IterateParams& params);

// PR coefficient after n iterations on a 1D face: 1 - (1-c0)^(2^n).
BigRat closed_form_1d(const Rat& c0, int n);

// One step of the quadratic flow on the {PR,L7,L8} face.
template <class S>
std::array<S, 3> recurrence_step_78(const std::array<S, 3>& c) {
    const S& c0 = c[0];
    const S& c7 = c[1];
    const S& c8 = c[2];
    S half = S(1) / S(2);
    return {(S(2) - c0 - c8) * c0,
            half * (c0 * c8 + S(2) * c7 * c7 + S(2) * c8 * c8),
            half * (c0 + S(4) * c7) * c8};
}

// Confirms nl(W(p,p)) = c0*(2-c0) on every 1D face with its named strategy.
struct Formula1DReport {
    bool ok{true};
    std::string detail;
};
Formula1DReport verify_distillation_formula_1d(const std::vector<Rat>& samples);

// One-step displacement field over a closed 2D face, row-major over (c_i, c_j).
struct FlowRecord {
    double ci{}, cj{}, dci{}, dcj{}, nl{}, uffink_lhs{};
};
struct FlowField {
    FaceSpec face;
    std::uint64_t wiring_id{};
    int grid{};
    std::vector<FlowRecord> records;
};
FlowField flow_field(const FaceSpec& face, const Wiring& w, int grid_n);

struct Crossings {
    std::optional<int> cc_trivial;        // first step with CHSH >= 4*sqrt(2/3)
    std::optional<int> uffink_violation;  // first step with uffink_lhs > 4
    std::optional<int> converged;
};
Crossings threshold_crossings(const Trajectory& traj);

}  // namespace nlsd
