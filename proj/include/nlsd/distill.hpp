#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nlsd/block_table.hpp"
#include "nlsd/box.hpp"
#include "nlsd/wiring.hpp"

namespace nlsd {

class local_point_error : public std::invalid_argument {
public:
    local_point_error() : std::invalid_argument("necessary_condition: point is local (c0 = 0)") {}
};

class not_pr_fixing_error : public std::invalid_argument {
public:
    not_pr_fixing_error() : std::invalid_argument("face_condition: wiring does not fix PR") {}
};

// All 81 wired vertex-pair boxes of one wiring: boxes[v][w] = W(vertex_v,
// vertex_w) with vertex 0 = PR and vertex i = L_i, plus the vertex classes
// i_k = nl(boxes[k][0]) + nl(boxes[0][k]) that drive the distillation
// condition.
struct BasisTable {
    std::uint64_t wiring_id{};
    std::array<std::array<Box, 9>, 9> boxes;
    Rat nl00;
    std::array<int, 8> klass{};
};

BasisTable basis_table(const Wiring& w);

// A nonempty subset of the local vertices; the face it names is
// conv({PR} u {L_i : i in S}).
struct FaceSpec {
    std::vector<int> vertices;  // sorted, unique, each in 1..8

    static FaceSpec of(std::vector<int> vs);
    int dim() const { return static_cast<int>(vertices.size()); }
    std::string str() const;
};

// The reduced two-copy distillation condition at a point: margin =
// c0*(nl00 - 1) + sum_k c_k*(i_k - 1), a necessary condition for
// nl(W(p,p)) > nl(p) being margin > 0. ctilde[i] groups the local weights
// by vertex class.
struct ConditionReport {
    std::array<Rat, 3> ctilde;
    Rat margin;
    bool passes{};
};

ConditionReport necessary_condition(const NLSPoint& pt, const BasisTable& bt);

// Face-wide form of the condition for a PR-fixing wiring: ctilde2 > ctilde0
// holds for every strictly positive weight assignment iff every vertex class
// is >= 1 and at least one equals 2.
struct FaceConditionReport {
    std::vector<int> classes;  // i_k for k in face order
    bool holds{};
};

FaceConditionReport face_condition(const FaceSpec& face, const BasisTable& bt);

// The quadratic map induced on face coordinates when a wiring maps every
// basis box of the face back into the face: c'_u = sum_{v,w} T[u][v][w] c_v c_w.
// Every T[.][v][w] column is a probability vector, so the simplex is
// preserved exactly.
struct QuadraticFlow {
    FaceSpec face;
    std::vector<int> support;  // 0 followed by the face vertices
    std::vector<Rat> tensor;   // T[u][v][w] indexed u*k*k + v*k + w, k = support size

    std::vector<Rat> step(const std::vector<Rat>& c) const;
};

// Present iff every W(vertex_v, vertex_w) with v,w in {0} u S decomposes in
// the nonlocal simplex with support inside {0} u S.
std::optional<QuadraticFlow> face_closure(const FaceSpec& face, const Wiring& w);

// --- sweeps over the wiring universe ---------------------------------------

struct WiringProfile {
    std::uint64_t id{};
    std::array<std::uint8_t, 8> klass{};
};

// Ids of all wirings with W(PR,PR) = PR exactly, ascending. The full universe
// scan is cheap against the memoized block flags.
std::vector<std::uint64_t> pr_fixing_wirings(int threads, int partitions = 256);

// Same scan, plus the vertex classes of each hit.
std::vector<WiringProfile> pr_fixing_profiles(int threads, int partitions = 256);

// Exact census over all 82^4 wirings of the scaled CHSH maxima (4*chsh) of
// W(PR,PR), W(PR,L_i), W(L_i,PR). nl values follow as max(0,(c/4-2)/2).
struct CensusReport {
    std::uint64_t total{};
    std::uint64_t pr_fixing{};
    // counts[f][c] for functional f and chsh4max value c in 0..16;
    // f = 0: (PR,PR); f = 1..8: (PR,L_f); f = 9..16: (L_{f-8},PR).
    std::array<std::array<std::uint64_t, 17>, 17> counts{};
    std::vector<WiringProfile> profiles;  // PR-fixing wirings, ascending

    // distinct nl values seen for a functional in ascending order, as exact
    // strings ("0","1/2","1"), with counts
    std::vector<std::string> nl_values(int functional) const;
    std::vector<std::pair<std::string, std::uint64_t>> nl_counts(int functional) const;
    // byte-stable rendering used by the determinism checks
    std::string serialize() const;
};

CensusReport nl_value_census(int threads, int partitions = 256);

// Basis-profile cache: header "wiring_id,nl00_num,nl00_den,i1,...,i8", one
// row per PR-fixing wiring, ascending. Loaders reject malformed files so
// callers can fall back to recomputation.
bool save_profiles_csv(const std::string& path, const std::vector<WiringProfile>& profiles);
std::optional<std::vector<WiringProfile>> load_profiles_csv(const std::string& path);

// --- face classification -----------------------------------------------------

// Distillability report for one face. Grids live on the face's relative
// interior: every coordinate (including c0) strictly positive with step
// 1/grid, augmented with the exact isotropic points at every c0 = j/grid.
// Boundary points belong to subfaces and are classified there.
struct FaceReport {
    FaceSpec face;
    bool pointwise_distillable{};
    std::optional<std::uint64_t> single_wiring_witness;  // smallest passing id
    std::vector<std::uint64_t> witness_ids;              // all whole-grid witnesses
    bool isotropic_distillable{};
    // Witness wirings that also map the face into itself. Plain closure is
    // uninformative here: the two pass-through wirings map every face into
    // itself without distilling anything.
    std::vector<std::uint64_t> closed_within_face;
    std::string notes;
};

FaceReport classify_face(const FaceSpec& face, const std::vector<WiringProfile>& profiles,
                         int grid = 20);

// True iff the wiring strictly increases NL at every interior grid point of
// the face (including the isotropic samples). Used to confirm published
// strategies beyond the smallest-id witness.
bool wiring_distills_face(const FaceSpec& face, const Wiring& w, int grid = 20);

// True iff every wired vertex-pair box of the face decomposes with support
// inside the face (the pass-through wirings close every face this way).
bool wiring_closes_face(const FaceSpec& face, const Wiring& w);

// All faces of a given dimension, ordered lexicographically.
std::vector<FaceSpec> faces_of_dim(int dim);

// Exact one-step evaluation on one face with integer-scaled arithmetic: a
// point is given by integer coordinates g (c0 first, then the face vertices
// in order) summing to `scale`, meaning c = g/scale.
class FaceStepEvaluator {
public:
    explicit FaceStepEvaluator(const FaceSpec& face);

    void load(const Wiring& w);

    // nl(W(p,p)) > nl(p) at the point, exactly.
    bool increases(const int* g, int scale) const;

    // scale * margin of the reduced condition for a PR-fixing klass vector.
    long long margin(const int* g, const std::array<std::uint8_t, 8>& klass) const;

    int arity() const { return static_cast<int>(support_.size()); }

private:
    FaceSpec face_;
    std::vector<int> support_;  // 0 followed by the face vertices
    int vert_e4_[5][4]{};
    int basis_e4_[5][5][4]{};
};

}  // namespace nlsd
