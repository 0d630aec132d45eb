#include "test_support.hpp"
#include "toricstack/sheafrep.hpp"

#include <doctest.h>

#include <set>

using namespace ts;
using tsx::corpus;

namespace {

const char* kFans[] = {"p2.json", "p112.json", "p123.json", "wp1-2-3.json", "wp1-2-4.json",
                       "wp1-3-6.json", "wp1-4-6.json", "hirzebruch-stacky.json", "f1.json"};

SheafData line(const IntVec& B) {
    SheafData s;
    s.kind = "line_bundle";
    s.B = B;
    return s;
}

IntVec random_vec(std::mt19937& rng, std::size_t n, int bound) {
    std::uniform_int_distribution<int> dist(-bound, bound);
    IntVec v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

// B + beta^T m: the same line bundle with its linearization twisted by m.
IntVec twist(const StackyFan& fan, const IntVec& B, const IntVec& m) {
    IntVec out = B;
    for (std::size_t r = 0; r < fan.n(); ++r)
        for (std::size_t k = 0; k < fan.d; ++k) out[r] += m[k] * fan.rays[r][k];
    return out;
}

SFamilyWindow perturb(const SFamilyWindow& w, const FinAbGroup& DG, const IntVec& delta) {
    SFamilyWindow out = w;
    for (auto& s : out.summands)
        for (auto& [c, mult] : s.dims) {
            CharMultiset shifted;
            for (const auto& [ch, m] : mult) {
                IntVec v = DG.lift_vec(ch);
                for (std::size_t k = 0; k < v.size(); ++k) v[k] += delta[k];
                shifted[DG.normalize(v)] += m;
            }
            mult = shifted;
        }
    return out;
}

bool glues_everywhere(const StackyFan& fan, const std::vector<SFamilyWindow>& ws) {
    for (std::size_t i = 0; i < fan.cones.size(); ++i)
        for (std::size_t j = 0; j < fan.cones.size(); ++j)
            if (i != j && !glue_check(fan, ws, i, j).ok) return false;
    return true;
}

}  // namespace

TEST_CASE("line bundle chart data") {
    for (const char* f : kFans) {
        StackyFan fan = load_fan(corpus(f));
        for (std::size_t c = 0; c < fan.cones.size(); ++c) {
            LineBundleChartData lb = line_bundle_chart_data(fan, IntVec(fan.n(), Int(0)), c);
            CHECK(lb.box.point == IntVec(fan.d, Int(0)));
            CHECK(lb.A == IntVec(fan.d, Int(0)));
            CHECK(local_group(fan, c).reduce(lb.fine) == IntVec(lb.fine.size(), Int(0)));
        }
    }
    StackyFan wp = load_fan(corpus("wp1-2-3.json"));
    LineBundleChartData lb = line_bundle_chart_data(wp, IntVec{1, 0}, 0);
    CHECK(lb.box.point == IntVec{1});
    CHECK(lb.box.q == std::vector<Rat>{Rat(1, 2)});
    CHECK(lb.A == IntVec{0});

    StackyFan p2 = load_fan(corpus("p2.json"));
    for (std::size_t c = 0; c < 3; ++c) {
        LineBundleChartData d = line_bundle_chart_data(p2, IntVec{1, 1, 1}, c);
        CHECK(d.box.point == IntVec{0, 0});
        CHECK(torus_weights(p2, c) * d.A == IntVec{1, 1});
    }
}

TEST_CASE("chart data obeys the tensor law") {
    std::mt19937 rng(3);
    for (const char* f : kFans) {
        StackyFan fan = load_fan(corpus(f));
        for (int trial = 0; trial < 10; ++trial) {
            IntVec B1 = random_vec(rng, fan.n(), 3), B2 = random_vec(rng, fan.n(), 3), B12 = B1;
            for (std::size_t r = 0; r < fan.n(); ++r) B12[r] += B2[r];
            for (std::size_t c = 0; c < fan.cones.size(); ++c) {
                auto d1 = line_bundle_chart_data(fan, B1, c), d2 = line_bundle_chart_data(fan, B2, c);
                auto d12 = line_bundle_chart_data(fan, B12, c);
                IntMatrix M = torus_weights(fan, c);
                // Boxes add with carry into the generator position.
                IntVec lhs = d12.box.point, rhs = d1.box.point;
                IntVec carry = M * d12.A, parts = M * d1.A, parts2 = M * d2.A;
                for (std::size_t k = 0; k < fan.d; ++k) {
                    lhs[k] += carry[k];
                    rhs[k] += d2.box.point[k] + parts[k] + parts2[k];
                }
                CHECK(lhs == rhs);
                FinAbGroup DG = local_group(fan, c);
                IntVec sum = d1.fine;
                for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += d2.fine[k];
                CHECK(DG.reduce(sum) == d12.fine);
            }
        }
    }
}

TEST_CASE("line bundle windows") {
    StackyFan p2 = load_fan(corpus("p2.json"));
    SFamilyWindow w = line_bundle_window(p2, IntVec{0, 0, 0}, 0, IntVec{-2, -2}, IntVec{2, 2});
    for (int x = -2; x <= 2; ++x)
        for (int y = -2; y <= 2; ++y) CHECK(w.dim(IntVec{x, y}) == ((x >= 0 && y >= 0) ? 1 : 0));
    CHECK_THROWS_WITH_AS(line_bundle_window(p2, IntVec{5, 0, 0}, 0, IntVec{-2, -2}, IntVec{2, 2}),
                         "window excludes generator", DomainError);

    // Chart of the weight-2 ray: the module spanned by the generator and its
    // multiples by x, enumerated directly.
    StackyFan wp = load_fan(corpus("wp1-2-3.json"));
    SFamilyWindow c0 = line_bundle_window(wp, IntVec{1, 0}, 0, IntVec{-3}, IntVec{6});
    for (int c = -3; c <= 6; ++c) {
        CharMultiset expect;
        for (int k = 0; 1 + k <= 6; ++k)
            if (1 + k == c) expect[IntVec{Int((1 + k) % 2)}] = 1;
        CHECK(c0.at(IntVec{c}) == expect);
    }
}

TEST_CASE("line bundle windows multiply under tensor product") {
    std::mt19937 rng(5);
    for (const char* f : {"p112.json", "hirzebruch-stacky.json", "wp1-3-6.json"}) {
        StackyFan fan = load_fan(corpus(f));
        for (int trial = 0; trial < 5; ++trial) {
            IntVec B1 = random_vec(rng, fan.n(), 2), B2 = random_vec(rng, fan.n(), 2), B12 = B1;
            for (std::size_t r = 0; r < fan.n(); ++r) B12[r] += B2[r];
            for (std::size_t c = 0; c < fan.cones.size(); ++c) {
                IntVec lo(fan.d, Int(-5)), hi(fan.d, Int(5));
                IntVec s2 = cone_slice(fan, B2, c);
                FinAbGroup DG = local_group(fan, c);
                SFamilyWindow w1 = line_bundle_window(fan, B1, c, lo, hi);
                SFamilyWindow w12 = line_bundle_window(fan, B12, c, lo, hi);
                // Degree c of L_{B1+B2} is degree c - s2 of L_{B1} times the generator of L_{B2}.
                for (const auto& [pt, mult] : w12.summands[0].dims) {
                    IntVec back = pt;
                    for (std::size_t k = 0; k < fan.d; ++k) back[k] -= s2[k];
                    CharMultiset m1 = w1.contains(back) ? w1.at(back) : read_extended(DG, w1, back);
                    REQUIRE(m1.size() == 1);
                    IntVec ch = DG.lift_vec(m1.begin()->first);
                    for (std::size_t k = 0; k < ch.size(); ++k) ch[k] += s2[k];
                    CHECK(mult == CharMultiset{{DG.normalize(ch), 1}});
                }
            }
        }
    }
}

TEST_CASE("box decomposition") {
    StackyFan p2 = load_fan(corpus("p2.json"));
    auto triv = box_decompose(line_bundle_window(p2, IntVec{0, 0, 0}, 0, IntVec{-1, -1}, IntVec{2, 2}));
    REQUIRE(triv.size() == 1);
    CHECK(triv.begin()->first == IntVec{0, 0});

    StackyFan p112 = load_fan(corpus("p112.json"));
    // Chart 2 is the mu_2 chart; B = D_2 puts its generator in the nonzero box.
    SFamilyWindow a = line_bundle_window(p112, IntVec{0, 0, 1}, 2, IntVec{-2, -2}, IntVec{3, 3});
    auto parts = box_decompose(a);
    REQUIRE(parts.size() == 1);
    CHECK(parts.begin()->first != IntVec{0, 0});
    CHECK(parts.count(IntVec{0, 0}) == 0);

    SFamilyWindow b = line_bundle_window(p112, IntVec{0, 0, 0}, 2, IntVec{-2, -2}, IntVec{3, 3});
    SFamilyWindow sum = direct_sum(a, b);
    auto two = box_decompose(sum);
    CHECK(two.size() == 2);
    for (int x = -2; x <= 3; ++x)
        for (int y = -2; y <= 3; ++y) {
            IntVec c{x, y};
            Int total = 0;
            for (const auto& [label, w] : two) total += w.dim(c);
            CHECK(total == sum.dim(c));
            CHECK(total == a.dim(c) + b.dim(c));
        }
    CHECK_THROWS_WITH_AS(characteristic_function(p112, {line_bundle_window(p112, IntVec{0, 0, 0}, 0, {-1, -1}, {1, 1}),
                                                        line_bundle_window(p112, IntVec{0, 0, 0}, 1, {-1, -1}, {1, 1}),
                                                        sum}),
                         "decomposable candidate on chart 2", DomainError);
}

TEST_CASE("line bundles glue and perturbed fine gradings do not") {
    std::mt19937 rng(17);
    for (const char* f : kFans) {
        CAPTURE(f);
        StackyFan fan = load_fan(corpus(f));
        CHECK(glues_everywhere(fan, sheaf_windows(fan, line(IntVec(fan.n(), Int(0))))));
        for (int trial = 0; trial < 6; ++trial) {
            IntVec B = random_vec(rng, fan.n(), 3);
            CAPTURE(B);
            std::vector<SFamilyWindow> ws = sheaf_windows(fan, line(B));
            CHECK(glues_everywhere(fan, ws));
            for (std::size_t j = 0; j < fan.cones.size(); ++j) {
                FinAbGroup DG = local_group(fan, j);
                if (DG.order() == 1) continue;
                for (std::size_t k = 0; k < fan.d; ++k) {
                    IntVec delta(fan.d, Int(0));
                    delta[k] = 1;
                    if (DG.is_zero(delta)) continue;
                    std::vector<SFamilyWindow> bad = ws;
                    bad[j] = perturb(ws[j], DG, delta);
                    std::size_t i = (j + 1) % fan.cones.size();
                    CHECK_FALSE(glue_check(fan, bad, i, j).ok);
                    CHECK_FALSE(glue_check(fan, bad, j, i).ok);
                }
            }
        }
    }
}

TEST_CASE("saturation is certified before gluing") {
    StackyFan p2 = load_fan(corpus("p2.json"));
    std::vector<SFamilyWindow> ws = sheaf_windows(p2, line(IntVec{0, 0, 0}));
    ws[0] = line_bundle_window(p2, IntVec{0, 0, 0}, 0, IntVec{0, 0}, IntVec{0, 0});
    ws[0].saturation = IntVec{0, 3};
    CHECK_THROWS_WITH_AS(glue_check(p2, ws, 0, 2), "insufficient saturation on axis 1 of chart 0", DomainError);
}

TEST_CASE("rank-2 reflexive data") {
    StackyFan p2 = load_fan(corpus("p2.json"));
    SheafData s;
    s.kind = "rank2_reflexive";
    s.rank2.A = IntVec{0, 0, 0};
    s.rank2.lambda = IntVec{0, 0, 0};
    s.rank2.p = {proj_point(1, 0), proj_point(1, 0), proj_point(1, 0)};
    CharacteristicFunction flat = characteristic_function(p2, sheaf_windows(p2, s));
    for (const auto& ch : flat.charts)
        for (const auto& [c, dim] : ch.dims) CHECK(dim == 2);

    // Three distinct flags with gap 1: 2 past both jumps, 1 inside exactly one gap.
    s.rank2.lambda = IntVec{1, 1, 1};
    s.rank2.p = {proj_point(1, 0), proj_point(0, 1), proj_point(1, 1)};
    CharacteristicFunction cf = characteristic_function(p2, sheaf_windows(p2, s));
    const auto& dims = cf.charts[0].dims;
    auto dim = [&](int x, int y) {
        auto it = dims.find(IntVec{x, y});
        return it == dims.end() ? Int(0) : it->second;
    };
    CHECK(dim(-1, 0) == 0);
    CHECK(dim(0, 0) == 0);
    CHECK(dim(0, 1) == 1);
    CHECK(dim(1, 0) == 1);
    CHECK(dim(1, 1) == 2);
    CHECK(dim(2, 2) == 2);
    CHECK(glues_everywhere(p2, sheaf_windows(p2, s)));

    StackyFan p112 = load_fan(corpus("p112.json"));
    s.rank2.A = IntVec{1, -1, 2};
    s.rank2.lambda = IntVec{2, 1, 3};
    s.rank2.p = {proj_point(1, 0), generic_point(0), proj_point(1, 2)};
    CHECK(glues_everywhere(p112, sheaf_windows(p112, s)));
}

TEST_CASE("rank-1 torsion-free data glues") {
    StackyFan p112 = load_fan(corpus("p112.json"));
    SheafData s;
    s.kind = "rank1_tf";
    s.rank1.B = IntVec{1, 0, -1};
    s.rank1.staircases = {{IntVec{0, 0}, IntVec{1, 0}}, {}, {IntVec{0, 0}, IntVec{0, 1}, IntVec{1, 0}}};
    std::vector<SFamilyWindow> ws = sheaf_windows(p112, s);
    CHECK(glues_everywhere(p112, ws));
    CHECK(ws[0].dim(cone_slice(p112, s.rank1.B, 0)) == 0);
    s.rank1.staircases[1] = {IntVec{1, 0}};
    CHECK_THROWS_AS(sheaf_windows(p112, s), DomainError);
}

TEST_CASE("framing") {
    std::mt19937 rng(29);
    for (const char* f : kFans) {
        StackyFan fan = load_fan(corpus(f));
        for (int trial = 0; trial < 5; ++trial) {
            IntVec B = random_vec(rng, fan.n(), 3);
            IntVec m = random_vec(rng, fan.d, 2);
            CharacteristicFunction cf = characteristic_function(fan, sheaf_windows(fan, line(B)));
            CharacteristicFunction framed = frame(fan, cf);
            CHECK(frame(fan, framed) == framed);
            CharacteristicFunction twisted = characteristic_function(fan, sheaf_windows(fan, line(twist(fan, B, m))));
            CHECK(frame(fan, twisted) == framed);
            for (const auto& ch : cf.charts)
                for (const auto& [c, dim] : ch.dims) CHECK(dim == 1);
        }
    }
    StackyFan p2 = load_fan(corpus("p2.json"));
    SheafData s;
    s.kind = "rank2_reflexive";
    s.rank2.A = IntVec{0, 1, 0};
    s.rank2.lambda = IntVec{1, 2, 1};
    s.rank2.p = {proj_point(1, 0), proj_point(0, 1), proj_point(1, 1)};
    CharacteristicFunction base = frame(p2, characteristic_function(p2, sheaf_windows(p2, s)));
    s.rank2.A = twist(p2, s.rank2.A, IntVec{2, -1});
    CHECK(frame(p2, characteristic_function(p2, sheaf_windows(p2, s))) == base);
}

TEST_CASE("rank-2 decomposability against a basis search") {
    std::mt19937 rng(31);
    std::vector<ProjPoint> pool = {proj_point(1, 0), proj_point(0, 1), proj_point(1, 1), proj_point(1, 2)};
    for (int trial = 0; trial < 300; ++trial) {
        std::uniform_int_distribution<int> nd(1, 6), ld(0, 2), pd(0, 4);
        Rank2ReflexiveData d;
        std::size_t n = static_cast<std::size_t>(nd(rng));
        long generic = 0;
        for (std::size_t r = 0; r < n; ++r) {
            d.A.push_back(0);
            d.lambda.push_back(ld(rng));
            int k = pd(rng);
            d.p.push_back(k == 4 ? generic_point(generic++) : pool[static_cast<std::size_t>(k)]);
        }
        // Search all pairs of distinct lines from the flags and coordinate axes.
        std::vector<ProjPoint> cand = d.p;
        cand.push_back(proj_point(1, 0));
        cand.push_back(proj_point(0, 1));
        bool found = false;
        for (const auto& u : cand)
            for (const auto& v : cand) {
                if (u == v) continue;
                bool ok = true;
                for (std::size_t r = 0; r < n; ++r)
                    if (d.lambda[r] > 0 && !(d.p[r] == u || d.p[r] == v)) ok = false;
                found |= ok;
            }
        DecomposabilityVerdict v = rank2_decomposable(d);
        CHECK(v.decomposable == found);
        if (v.decomposable) {
            REQUIRE(v.witness.size() == 2);
            for (std::size_t r = 0; r < n; ++r)
                if (d.lambda[r] > 0) CHECK((d.p[r] == v.witness[0] || d.p[r] == v.witness[1]));
        }
    }
    Rank2ReflexiveData same{IntVec{0, 0, 0}, IntVec{1, 1, 1}, {proj_point(2, 4), proj_point(1, 2), proj_point(-1, -2)}};
    CHECK(rank2_decomposable(same).decomposable);
}

TEST_CASE("sheaf documents") {
    SheafData r2 = parse_sheaf_json(R"({"kind":"rank2_reflexive","A":[0,0,0],"lambda":[1,1,1],"p":[[1,0],[0,2],"generic"]})");
    CHECK(r2.rank2.p[1] == proj_point(0, 1));
    CHECK(r2.rank2.p[2].generic_id == 0);
    CHECK_THROWS_AS(parse_sheaf_json(R"({"kind":"line_bundle","B":[0],"extra":1})"), ParseError);
    CHECK_THROWS_AS(parse_sheaf_json(R"({"kind":"sheaf"})"), ParseError);
    CHECK_THROWS_AS(parse_sheaf_json(R"({"kind":"rank2_reflexive","A":[0],"lambda":[0],"p":[[0,0]]})"), ParseError);
}
