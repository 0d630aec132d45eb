#include "test_support.hpp"
#include "toricstack/abgrp.hpp"

#include <doctest.h>

#include <set>

using namespace ts;

namespace {

FinAbGroup free_group(std::size_t r) { return cokernel(IntMatrix(r, 0)); }

// Orders of all elements of a finite group, by repeated addition.
std::multiset<Int> order_census(const FinAbGroup& g) {
    std::multiset<Int> out;
    for (const auto& e : g.elements()) {
        IntVec acc = e;
        Int k = 1;
        auto is_zero = [](const IntVec& v) {
            for (auto& x : v)
                if (x != 0) return false;
            return true;
        };
        while (!is_zero(acc)) {
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += e[i];
            acc = g.reduce(acc);
            ++k;
        }
        out.insert(k);
    }
    return out;
}

}  // namespace

TEST_CASE("hom kernel examples") {
    FinAbGroup z2 = cokernel(IntMatrix{{2}});
    auto id = hom_kernel(GroupHom{z2, z2, IntMatrix::identity(1)});
    CHECK(id.group.torsion.empty());
    CHECK(id.group.free_rank == 0);

    auto red = hom_kernel(GroupHom{free_group(1), z2, IntMatrix{{1}}});
    CHECK(red.group.free_rank == 1);
    CHECK(red.group.torsion.empty());
    CHECK(red.inclusion.matrix == IntMatrix{{2}});

    FinAbGroup src = cokernel(IntMatrix{{6, 0}, {0, 4}});
    GroupHom parity{src, z2, IntMatrix{{1, 1}}};
    auto k = hom_kernel(parity);
    CHECK(k.group.order() == 12);
    // Brute force: count elements (a,b) of Z/6+Z/4 with a+b even.
    int count = 0;
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 4; ++b)
            if ((a + b) % 2 == 0) ++count;
    CHECK(count == 12);
    // Composition with the inclusion vanishes.
    IntMatrix comp = parity.matrix * k.inclusion.matrix;
    for (std::size_t j = 0; j < comp.cols(); ++j) CHECK(z2.is_zero(comp.col(j)));
}

TEST_CASE("malformed hom is rejected") {
    FinAbGroup z2 = cokernel(IntMatrix{{2}});
    FinAbGroup z3 = cokernel(IntMatrix{{3}});
    CHECK_THROWS_WITH_AS(hom_kernel(GroupHom{z2, z3, IntMatrix{{1}}}), "not a homomorphism", DomainError);
    CHECK_THROWS_AS(hom_cokernel(GroupHom{z2, z3, IntMatrix{{1}}}), DomainError);
}

TEST_CASE("hom cokernel examples") {
    auto zero = hom_cokernel(GroupHom{free_group(1), free_group(1), IntMatrix{{0}}});
    CHECK(zero.group.free_rank == 1);
    auto twice = hom_cokernel(GroupHom{free_group(1), free_group(1), IntMatrix{{2}}});
    CHECK(twice.group.torsion == IntVec{2});
    CHECK(twice.group.free_rank == 0);
    // Cokernel composed with the map is zero.
    IntMatrix comp = twice.projection.matrix * IntMatrix{{2}};
    CHECK(twice.group.is_zero(comp.col(0)));
}

TEST_CASE("torsion subgroup") {
    CHECK(torsion_subgroup(free_group(1)).group.torsion.empty());
    FinAbGroup g = cokernel(IntMatrix{{4}, {0}});
    auto t = torsion_subgroup(g);
    CHECK(t.group.torsion == IntVec{4});
    CHECK(t.group.free_rank == 0);
    CHECK(t.inclusion.descends());
    CHECK(is_injective(t.inclusion));

    FinAbGroup h = cokernel(IntMatrix{{2, 0}, {0, 3}, {1, 1}});
    auto th = torsion_subgroup(h);
    // Census: the torsion elements of h are exactly those of th's image.
    auto census = order_census(th.group);
    CHECK(census.size() == std::size_t(th.group.order()));
    // Brute force in presentation coordinates: vectors v in [-6,6]^3 with 6v = 0 in h.
    std::set<IntVec> classes;
    for (int a = -6; a <= 6; ++a)
        for (int b = -6; b <= 6; ++b)
            for (int c = -6; c <= 6; ++c) {
                IntVec v{a, b, c};
                IntVec nv = h.normalize(v);
                IntVec sixv{6 * a, 6 * b, 6 * c};
                if (h.is_zero(sixv)) classes.insert(nv);
            }
    CHECK(Int(classes.size()) == th.group.order());
}

TEST_CASE("character dual") {
    CHECK(same_invariants(dualize_to_characters(cokernel(IntMatrix{{5}})), cokernel(IntMatrix{{5}})));
    CHECK(dualize_to_characters(free_group(3)).free_rank == 3);
    FinAbGroup g = standard_group({2, 4}, 0);
    FinAbGroup dd = dualize_to_characters(dualize_to_characters(g));
    CHECK(same_invariants(g, dd));
    CHECK(dualize_to_characters(g).torsion == IntVec{2, 4});
}

TEST_CASE("short exact sequence audit") {
    // 0 -> Z/2 -> Z/4 -> Z/2 -> 0 through kernel and cokernel of multiplication by 2.
    FinAbGroup z4 = cokernel(IntMatrix{{4}});
    GroupHom twice{z4, z4, IntMatrix{{2}}};
    auto k = hom_kernel(twice);
    auto c = hom_cokernel(twice);
    CHECK(k.group.order() == 2);
    CHECK(c.group.order() == 2);
    CHECK(k.group.order() * c.group.order() == z4.order());
}
