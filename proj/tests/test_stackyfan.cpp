#include "test_support.hpp"
#include "toricstack/stackyfan.hpp"

#include <doctest.h>

using namespace ts;
using tsx::corpus;

namespace {

IntVec iv(std::initializer_list<long long> xs) {
    IntVec v;
    for (auto x : xs) v.push_back(Int(x));
    return v;
}

IntVec dual_row(const GaleDual& g) { return g.beta_dual.row(0); }

}  // namespace

TEST_CASE("corpus fans validate") {
    for (const char* f : {"p2.json", "p112.json", "p123.json", "wp1-2-3.json", "wp1-2-4.json",
                          "wp1-3-6.json", "wp1-4-6.json", "hirzebruch-stacky.json", "f1.json",
                          "p1-torsion.json"}) {
        CAPTURE(f);
        ValidationReport rep = validate(load_fan(corpus(f)));
        CHECK(rep.valid);
        CHECK(rep.failures.empty());
    }
}

TEST_CASE("invalid fans are reported") {
    StackyFan fan = load_fan(corpus("p2.json"));
    fan.cones[0] = {1, 1};
    ValidationReport rep = validate(fan);
    CHECK_FALSE(rep.valid);
    REQUIRE(rep.failures.size() == 1);
    CHECK(rep.failures[0].find("not simplicial") != std::string::npos);

    StackyFan dep = load_fan(corpus("p2.json"));
    dep.rays[2] = iv({-2, 0});
    dep.rays[1] = iv({0, 1});
    dep.cones = {{0, 2}};
    rep = validate(dep);
    CHECK_FALSE(rep.valid);

    StackyFan line;
    line.d = 2;
    line.rays = {iv({1, 0}), iv({-1, 0})};
    line.cones = {{0, 1}};
    CHECK_FALSE(validate(line).valid);
    CHECK_THROWS_AS(gale_dual(line), DomainError);
}

TEST_CASE("parser rejects unknown fields and bad syntax") {
    CHECK_THROWS_AS(parse_fan_json("{\"lattice\":{\"rank\":1},\"rays\":[[1]],\"top_cones\":[[0]],\"x\":1}"),
                    ParseError);
    CHECK_THROWS_AS(parse_fan_json("{\"lattice\":"), ParseError);
    CHECK_THROWS_AS(parse_fan_json("{\"rays\":[],\"top_cones\":[]}"), ParseError);
    StackyFan fan = load_fan(corpus("p112.json"));
    StackyFan again = parse_fan_json(fan_to_json(fan));
    CHECK(again.rays == fan.rays);
    CHECK(again.cones == fan.cones);
    REQUIRE(again.polarization);
    CHECK(again.polarization->Xi == fan.polarization->Xi);
}

TEST_CASE("Gale duals of the corpus") {
    GaleDual p2 = gale_dual(load_fan(corpus("p2.json")));
    CHECK(p2.DG.free_rank == 1);
    CHECK(p2.DG.torsion.empty());
    CHECK(dual_row(p2) == iv({1, 1, 1}));

    GaleDual p112 = gale_dual(load_fan(corpus("p112.json")));
    CHECK(dual_row(p112) == iv({1, 2, 1}));

    GaleDual wp = gale_dual(load_fan(corpus("wp1-2-3.json")));
    CHECK(wp.DG.free_rank == 1);
    CHECK(dual_row(wp) == iv({3, 2}));

    // Non-primitive weights give torsion in DG.
    GaleDual wp24 = gale_dual(load_fan(corpus("wp1-2-4.json")));
    CHECK(wp24.DG.torsion == iv({2}));
    CHECK(wp24.DG.free_rank == 1);
}

TEST_CASE("local groups, torus weights and boxes") {
    StackyFan p2 = load_fan(corpus("p2.json"));
    for (std::size_t c = 0; c < 3; ++c) {
        CHECK(local_group(p2, c).order() == 1);
        CHECK(box(p2, c).size() == 1);
    }
    CHECK(torus_weights(p2, 0) == IntMatrix::identity(2));

    StackyFan p112 = load_fan(corpus("p112.json"));
    FinAbGroup g = local_group(p112, 2);
    CHECK(g.torsion == iv({2}));
    CHECK(abs(det(torus_weights(p112, 2))) == 2);
    CHECK(box(p112, 2).size() == 2);

    StackyFan wp = load_fan(corpus("wp1-2-3.json"));
    CHECK(local_group(wp, 0).torsion == iv({2}));
    CHECK(local_group(wp, 1).torsion == iv({3}));
    CHECK(torus_weights(wp, 0) == IntMatrix{{2}});
    std::vector<BoxElement> b = box(wp, 1);
    REQUIRE(b.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(b[i].point == iv({-static_cast<long long>(i)}));
    CHECK(box(wp, 0)[1].q == std::vector<Rat>{Rat(1, 2)});

    CHECK_THROWS_AS(local_group(wp, 5), DomainError);
}

TEST_CASE("torsion lattices are limited to group computations") {
    StackyFan t = load_fan(corpus("p1-torsion.json"));
    GaleDual g = gale_dual(t);
    CHECK(g.DG.free_rank == 1);
    CHECK(local_group(t, 0).order() == 2);
    CHECK_THROWS_AS(torus_weights(t, 0), DomainError);
    CHECK_THROWS_AS(box(t, 0), DomainError);
}

TEST_CASE("box size matches local group order on random fans") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        StackyFan fan = tsx::random_complete_fan2(rng, 4);
        REQUIRE(validate(fan).valid);
        for (std::size_t c = 0; c < fan.cones.size(); ++c) {
            IntMatrix M = torus_weights(fan, c);
            Int ord = local_group(fan, c).order();
            CHECK(ord == abs(det(M)));
            std::vector<BoxElement> b = box(fan, c);
            CHECK(Int(b.size()) == ord);
            std::set<IntVec> pts;
            for (const auto& e : b) {
                pts.insert(e.point);
                for (const Rat& q : e.q) {
                    CHECK(q >= 0);
                    CHECK(q < 1);
                    CHECK(ord % denominator(q) == 0);
                }
            }
            CHECK(pts.size() == b.size());
            CHECK(b[0].point == IntVec(2, Int(0)));
        }
    }
}

TEST_CASE("Gale sequence is exact at Z^n on random fans") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        StackyFan fan = tsx::random_complete_fan2(rng, 3);
        GaleDual g = gale_dual(fan);
        IntMatrix Bt = fan.ray_matrix().transpose();
        CHECK(g.DG.free_rank == fan.n() - 2);
        // Composite N* -> Z^n -> DG vanishes.
        for (std::size_t k = 0; k < 2; ++k) CHECK(g.DG.is_zero(Bt.col(k)));
        // Kernel of beta-dual equals the image of B^T, checked on a box of vectors.
        std::uniform_int_distribution<int> dist(-3, 3);
        for (int s = 0; s < 30; ++s) {
            IntVec v(fan.n());
            for (auto& x : v) x = dist(rng);
            CHECK(g.DG.is_zero(v) == solve(Bt, v).has_value());
        }
    }
}
