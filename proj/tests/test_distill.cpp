#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <random>

#include "nlsd/distill.hpp"
#include "nlsd/protocol.hpp"
#include "nlsd/sweep.hpp"
#include "test_util.hpp"

using namespace nlsd;

namespace {

const std::vector<WiringProfile>& profiles() {
    static const std::vector<WiringProfile> p = pr_fixing_profiles(default_threads());
    return p;
}

}  // namespace

TEST_CASE("basis table of the L7 strategy") {
    BasisTable bt = basis_table(*parse_wiring("table3:L7"));
    Box PR = pr_box(0, 0, 0), L7 = local_vertex(7), L8 = local_vertex(8);
    CHECK(bt.nl00 == Rat(1));
    CHECK(bt.boxes[0][0] == PR);
    CHECK(bt.boxes[7][0] == PR);
    CHECK(bt.boxes[0][7] == PR);
    CHECK(bt.boxes[0][8] == PR);
    CHECK(bt.boxes[8][0] == mix({{Rat(1, 2), L7}, {Rat(1, 2), L8}}));
    CHECK(bt.boxes[7][7] == L7);
    CHECK(bt.boxes[8][8] == L7);
    CHECK(bt.boxes[7][8] == L8);
    CHECK(bt.boxes[8][7] == L8);
    CHECK(bt.klass[6] == 2);
    CHECK(bt.klass[7] == 1);
}

TEST_CASE("basis table of an all-constant wiring") {
    BasisTable bt = basis_table(Wiring::from_id(0));  // four D(0) couplers
    CHECK(bt.nl00 == Rat(0));
    for (int v = 0; v <= 8; ++v)
        for (int w = 0; w <= 8; ++w) {
            CHECK(nl(bt.boxes[v][w]) == Rat(0));
            CHECK(bt.boxes[v][w].e[0] == Rat(1));  // always outputs (0,0)
        }
    for (int k = 0; k < 8; ++k) CHECK(bt.klass[k] == 0);
}

TEST_CASE("PR-fixing filter") {
    auto ids = pr_fixing_wirings(default_threads());
    CHECK(ids.size() == 3152);
    CHECK(std::is_sorted(ids.begin(), ids.end()));
    for (int i = 1; i <= 8; ++i) {
        auto id = parse_wiring("table3:L" + std::to_string(i))->id();
        CHECK(std::binary_search(ids.begin(), ids.end(), id));
    }
    CHECK(!std::binary_search(ids.begin(), ids.end(), std::uint64_t{0}));

    const BlockTable& tbl = BlockTable::get();
    Box PR = pr_box(0, 0, 0);
    std::mt19937 rng(31);
    for (int t = 0; t < 50; ++t) {
        std::uint64_t id = ids[rng() % ids.size()];
        CHECK(tbl.assemble(Wiring::from_id(id), 0, 0) == PR);
    }
}

TEST_CASE("at most one vertex pair maps to PR both ways") {
    const BlockTable& tbl = BlockTable::get();
    Box PR = pr_box(0, 0, 0);
    for (const auto& prof : profiles()) {
        Wiring w = Wiring::from_id(prof.id);
        int both = 0;
        for (int i = 1; i <= 8; ++i)
            if (tbl.assemble(w, i, 0) == PR && tbl.assemble(w, 0, i) == PR) ++both;
        CHECK(both <= 1);
    }
}

TEST_CASE("necessary condition") {
    BasisTable bt = basis_table(*parse_wiring("table3:L7"));

    NLSPoint pt;
    pt.c0 = Rat(1, 2);
    pt.c[6] = Rat(1, 2);
    auto rep = necessary_condition(pt, bt);
    CHECK(rep.margin == Rat(1, 2));
    CHECK(rep.passes);
    CHECK(rep.ctilde[2] == Rat(1, 2));
    CHECK(rep.ctilde[0] + rep.ctilde[1] + rep.ctilde[2] == Rat(1) - pt.c0);

    NLSPoint prpt;
    prpt.c0 = Rat(1);
    auto rep2 = necessary_condition(prpt, bt);
    CHECK(rep2.margin == Rat(0));
    CHECK(!rep2.passes);

    NLSPoint loc;
    loc.c0 = Rat(0);
    loc.c[6] = Rat(1);
    CHECK_THROWS_AS(necessary_condition(loc, bt), local_point_error);
}

TEST_CASE("face condition") {
    BasisTable bt = basis_table(*parse_wiring("table3:L7"));
    auto r7 = face_condition(FaceSpec::of({7}), bt);
    CHECK(r7.holds);
    CHECK(r7.classes == std::vector<int>{2});
    auto r78 = face_condition(FaceSpec::of({7, 8}), bt);
    CHECK(r78.holds);
    CHECK(r78.classes == std::vector<int>{2, 1});

    BasisTable bad = basis_table(Wiring::from_id(0));
    CHECK_THROWS_AS(face_condition(FaceSpec::of({7}), bad), not_pr_fixing_error);
}

TEST_CASE("face closure and quadratic flow") {
    Wiring w = *parse_wiring("table3:L7");
    auto flow7 = face_closure(FaceSpec::of({7}), w);
    REQUIRE(flow7.has_value());
    // c0' = 1 - c7^2, c7' = c7^2
    for (const Rat& c7 : {Rat(1, 4), Rat(2, 5), Rat(9, 10)}) {
        auto next = flow7->step({Rat(1) - c7, c7});
        CHECK(next[0] == Rat(1) - c7 * c7);
        CHECK(next[1] == c7 * c7);
    }

    auto flow78 = face_closure(FaceSpec::of({7, 8}), w);
    REQUIRE(flow78.has_value());
    std::mt19937 rng(37);
    for (int t = 0; t < 50; ++t) {
        int a = static_cast<int>(rng() % 11), b = static_cast<int>(rng() % (11 - a));
        Rat c0(a, 10), c7(b, 10), c8 = Rat(1) - c0 - c7;
        auto have = flow78->step({c0, c7, c8});
        auto want = recurrence_step_78<Rat>({c0, c7, c8});
        CHECK(have[0] == want[0]);
        CHECK(have[1] == want[1]);
        CHECK(have[2] == want[2]);
    }

    // tensor columns are probability vectors
    size_t k = flow78->support.size();
    for (size_t v = 0; v < k; ++v)
        for (size_t u = 0; u < k; ++u) {
            Rat sum(0);
            for (size_t o = 0; o < k; ++o) {
                const Rat& t = flow78->tensor[(o * k + v) * k + u];
                CHECK(t.sign() >= 0);
                sum += t;
            }
            CHECK(sum == Rat(1));
        }

    CHECK(!face_closure(FaceSpec::of({1, 7}), *parse_wiring("table4:L1L3")).has_value());
}

TEST_CASE("classification of single faces") {
    auto rep = classify_face(FaceSpec::of({7}), profiles());
    CHECK(rep.pointwise_distillable);
    CHECK(rep.isotropic_distillable);
    REQUIRE(rep.single_wiring_witness.has_value());
    CHECK(!rep.witness_ids.empty());
    auto t7 = parse_wiring("table3:L7")->id();
    CHECK(std::find(rep.witness_ids.begin(), rep.witness_ids.end(), t7) != rep.witness_ids.end());
    CHECK(std::find(rep.closed_within_face.begin(), rep.closed_within_face.end(), t7) !=
          rep.closed_within_face.end());

    auto rep17 = classify_face(FaceSpec::of({1, 7}), profiles());
    CHECK(!rep17.pointwise_distillable);
    CHECK(!rep17.isotropic_distillable);
    CHECK(!rep17.single_wiring_witness.has_value());
    CHECK(rep17.closed_within_face.empty());

    CHECK(wiring_distills_face(FaceSpec::of({7, 8}), *parse_wiring("table4:L7L8")));
    CHECK(!wiring_distills_face(FaceSpec::of({1, 7}), *parse_wiring("table4:L7L8")));
}

TEST_CASE("classification respects the vertex relabeling symmetry") {
    // the 1D faces are all equivalent under relabelings, and the 12
    // distillable pairs fall into two orbits: the partner pairs
    // {1,2},{3,4},{5,6},{7,8} and the remaining eight
    std::vector<size_t> counts1d, closed1d;
    for (int i = 1; i <= 8; ++i) {
        auto rep = classify_face(FaceSpec::of({i}), profiles());
        counts1d.push_back(rep.witness_ids.size());
        closed1d.push_back(rep.closed_within_face.size());
    }
    for (size_t i = 1; i < 8; ++i) {
        CHECK(counts1d[i] == counts1d[0]);
        CHECK(closed1d[i] == closed1d[0]);
    }
    CHECK(counts1d[0] > 0);

    const std::vector<std::vector<int>> partner = {{1, 2}, {3, 4}, {5, 6}, {7, 8}};
    const std::vector<std::vector<int>> crossed = {{1, 3}, {1, 5}, {2, 4}, {2, 6},
                                                   {3, 8}, {4, 7}, {5, 7}, {6, 8}};
    std::vector<size_t> pc, cc;
    for (const auto& f : partner) pc.push_back(classify_face(FaceSpec::of(f), profiles()).witness_ids.size());
    for (const auto& f : crossed) cc.push_back(classify_face(FaceSpec::of(f), profiles()).witness_ids.size());
    for (size_t v : pc) CHECK(v == pc[0]);
    for (size_t v : cc) CHECK(v == cc[0]);
    CHECK(pc[0] > 0);
    CHECK(cc[0] > 0);
}

TEST_CASE("faces_of_dim") {
    CHECK(faces_of_dim(1).size() == 8);
    CHECK(faces_of_dim(2).size() == 28);
    CHECK(faces_of_dim(3).size() == 56);
    CHECK(faces_of_dim(4).size() == 70);
    CHECK(faces_of_dim(1).front().vertices == std::vector<int>{1});
    CHECK(faces_of_dim(2).front().vertices == std::vector<int>{1, 2});
    CHECK(faces_of_dim(2).back().vertices == std::vector<int>{7, 8});
}

TEST_CASE("profile cache round-trip") {
    const std::string path = "profiles_test_cache.csv";
    REQUIRE(save_profiles_csv(path, profiles()));
    auto loaded = load_profiles_csv(path);
    REQUIRE(loaded.has_value());
    REQUIRE(loaded->size() == profiles().size());
    for (size_t i = 0; i < loaded->size(); ++i) {
        CHECK((*loaded)[i].id == profiles()[i].id);
        CHECK((*loaded)[i].klass == profiles()[i].klass);
    }

    CHECK(!load_profiles_csv("does_not_exist.csv").has_value());

    // corrupted header
    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        std::fputs("bogus\n1,1,1,0,0,0,0,0,0,0,0\n", f);
        std::fclose(f);
    }
    CHECK(!load_profiles_csv(path).has_value());

    // non-ascending ids
    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        std::fputs("wiring_id,nl00_num,nl00_den,i1,i2,i3,i4,i5,i6,i7,i8\n", f);
        std::fputs("5,1,1,0,0,0,0,0,0,0,0\n4,1,1,0,0,0,0,0,0,0,0\n", f);
        std::fclose(f);
    }
    CHECK(!load_profiles_csv(path).has_value());
    std::remove(path.c_str());
}

TEST_CASE("sweep determinism across partitionings") {
    auto p1 = pr_fixing_profiles(1, 1);
    auto p64 = pr_fixing_profiles(default_threads(), 64);
    REQUIRE(p1.size() == p64.size());
    for (size_t i = 0; i < p1.size(); ++i) {
        CHECK(p1[i].id == p64[i].id);
        CHECK(p1[i].klass == p64[i].klass);
    }

    // empty range folds to the neutral element
    auto empty = parallel_sweep<int>(
        5, 5, 4, 8, [](std::uint64_t, std::uint64_t) { return 1; },
        [](int& acc, int&& c) { acc += c; }, 0);
    CHECK(empty == 0);
}

TEST_CASE("necessary condition is sound on sampled faces") {
    // wherever NL strictly increases, the margin is positive (dimension <= 2
    // here; the acceptance suite runs the exhaustive version)
    std::mt19937 rng(41);
    std::vector<FaceSpec> faces = {FaceSpec::of({3}), FaceSpec::of({5, 6}), FaceSpec::of({2, 7})};
    for (const auto& face : faces) {
        for (int t = 0; t < 40; ++t) {
            const auto& prof = profiles()[rng() % profiles().size()];
            BasisTable bt = basis_table(Wiring::from_id(prof.id));
            for (int g0 = 1; g0 < 10; ++g0) {
                NLSPoint pt;
                pt.c0 = Rat(g0, 10);
                int rest = 10 - g0;
                for (size_t k = 0; k < face.vertices.size(); ++k) {
                    int take = (k + 1 == face.vertices.size())
                                   ? rest
                                   : static_cast<int>(rng() % (rest + 1));
                    pt.c[face.vertices[k] - 1] = Rat(take, 10);
                    rest -= take;
                }
                Box p = reconstruct(pt);
                bool increased = nl(apply_wiring(Wiring::from_id(prof.id), p, p)) > nl(p);
                if (increased) CHECK(necessary_condition(pt, bt).passes);
            }
        }
    }
}
