#include "toricstack/cli.hpp"

#include "toricstack/genfun.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <exception>
#include <fstream>
#include <ostream>
#include <thread>

namespace ts {

using json = nlohmann::json;

namespace {

json ints(const IntVec& v) {
    json a = json::array();
    for (const Int& x : v) a.push_back(to_ll(x));
    return a;
}

json rats(const std::vector<Rat>& v) {
    json a = json::array();
    for (const Rat& x : v) a.push_back(rat_to_string(x));
    return a;
}

json matrix(const IntMatrix& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(ints(m.row(i)));
    return a;
}

json group(const FinAbGroup& g) {
    json j{{"rank", g.free_rank}, {"torsion", ints(g.torsion)}};
    if (g.is_finite()) j["order"] = to_ll(g.order());
    return j;
}

json point_json(const ProjPoint& p) {
    if (p.generic_id >= 0) return "generic";
    return json::array({to_ll(p.x), to_ll(p.y)});
}

json series_json(const QSeries& s) {
    return {{"leading", rat_to_string(s.leading)}, {"order", s.order}, {"coefficients", ints(s.coeffs)}};
}

std::size_t thread_budget() {
    if (const char* env = std::getenv("TORICSTACK_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs job(k) for k < count on up to thread_budget() threads; rethrows the first
// failure in index order so errors are deterministic too.
template <class Result, class Job>
std::vector<Result> parallel_map(std::size_t count, Job job) {
    std::vector<Result> results(count);
    std::vector<std::exception_ptr> errors(count);
    const std::size_t workers = std::min(thread_budget(), std::max<std::size_t>(count, 1));
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t k = t; k < count; k += workers) {
                try {
                    results[k] = job(k);
                } catch (...) {
                    errors[k] = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

std::optional<std::pair<IntVec, IntVec>> window_arg(const StackyFan& fan, const std::vector<long long>& w) {
    if (w.empty()) return std::nullopt;
    if (w.size() != 2 * fan.d) throw DomainError("--window needs 2d integers: lo... hi...");
    IntVec lo(w.begin(), w.begin() + static_cast<long>(fan.d)), hi(w.begin() + static_cast<long>(fan.d), w.end());
    for (std::size_t k = 0; k < fan.d; ++k)
        if (lo[k] > hi[k]) throw DomainError("--window needs lo <= hi");
    return std::make_pair(lo, hi);
}

IntVec c1_arg(const StackyFan& fan, const std::vector<long long>& c) {
    if (c.empty()) return IntVec(fan.n(), Int(0));
    if (c.size() != fan.n()) throw DomainError("--c1 needs one integer per ray");
    return IntVec(c.begin(), c.end());
}

// Weights (a, b, c) when the fan is a weighted projective plane.
std::optional<IntVec> wps_weights(const StackyFan& fan) {
    if (fan.d != 2 || fan.n() != 3 || !fan.free_lattice()) return std::nullopt;
    GaleDual g = gale_dual(fan);
    if (!g.DG.torsion.empty() || g.DG.free_rank != 1) return std::nullopt;
    IntVec w = g.beta_dual.row(0);
    for (const Int& x : w)
        if (x <= 0) return std::nullopt;
    return w;
}

Int degree(const IntVec& weights, const IntVec& B) {
    Int x = 0;
    for (std::size_t r = 0; r < B.size(); ++r) x += weights[r] * B[r];
    return x;
}

}  // namespace

namespace {

json cmd_validate(const StackyFan& fan) {
    ValidationReport r = validate(fan);
    return {{"valid", r.valid}, {"failures", r.failures}};
}

json cmd_gale(const StackyFan& fan) {
    GaleDual g = gale_dual(fan);
    json dual = json::array();
    for (std::size_t r = 0; r < fan.n(); ++r) dual.push_back(ints(g.beta_dual.col(r)));
    return {{"DG", {{"rank", g.DG.free_rank}, {"torsion", ints(g.DG.torsion)}}}, {"beta_dual", dual}};
}

json cmd_localgroups(const StackyFan& fan) {
    json charts = json::array();
    for (std::size_t c = 0; c < fan.cones.size(); ++c) {
        json j = group(local_group(fan, c));
        j["cone"] = c;
        j["rays"] = fan.cones[c];
        charts.push_back(j);
    }
    return {{"charts", charts}};
}

json cmd_box(const StackyFan& fan) {
    json charts = json::array();
    for (std::size_t c = 0; c < fan.cones.size(); ++c) {
        json elems = json::array();
        for (const BoxElement& b : box(fan, c)) elems.push_back({{"q", rats(b.q)}, {"point", ints(b.point)}});
        charts.push_back({{"cone", c}, {"torus_weights", matrix(torus_weights(fan, c))}, {"box", elems}});
    }
    return {{"charts", charts}};
}

json cmd_intersect(const StackyFan& fan, std::size_t i, std::size_t j) {
    ChartIntersection ci = intersect(fan, i, j);
    json b1 = json::array(), b2 = json::array();
    for (const auto& a : ci.basis1) b1.push_back(ints(a));
    for (const auto& a : ci.basis2) b2.push_back(ints(a));
    return {{"i", i},
            {"j", j},
            {"shared", ci.shared},
            {"p", ci.p},
            {"DG_i", group(ci.DG_i)},
            {"DG_j", group(ci.DG_j)},
            {"DG_union", group(ci.DG_union)},
            {"DH", group(ci.DH)},
            {"X_K", group(ci.K_chars)},
            {"C", matrix(ci.C)},
            {"A", matrix(ci.A)},
            {"chi", matrix(ci.chi)},
            {"basis1", b1},
            {"basis2", b2}};
}

json cmd_picard(const StackyFan& fan, const IntVec& B) {
    json charts = json::array();
    for (std::size_t c = 0; c < fan.cones.size(); ++c) {
        LineBundleChartData d = line_bundle_chart_data(fan, B, c);
        charts.push_back({{"cone", c}, {"box", ints(d.box.point)}, {"q", rats(d.box.q)}, {"A", ints(d.A)},
                          {"fine", ints(d.fine)}});
    }
    return {{"B", ints(B)}, {"charts", charts}};
}

json cmd_glue(const StackyFan& fan, const SheafData& s, const std::optional<std::pair<IntVec, IntVec>>& win) {
    std::vector<SFamilyWindow> ws = sheaf_windows(fan, s, win);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < fan.cones.size(); ++i)
        for (std::size_t j = i + 1; j < fan.cones.size(); ++j) pairs.emplace_back(i, j);
    auto reports = parallel_map<GlueReport>(pairs.size(), [&](std::size_t k) {
        return glue_check(fan, ws, pairs[k].first, pairs[k].second);
    });
    bool ok = true;
    json out = json::array();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const GlueReport& r = reports[k];
        json j{{"i", pairs[k].first}, {"j", pairs[k].second}, {"ok", r.ok}, {"points", r.points_checked}};
        if (r.first_failure) j["first_failure"] = ints(*r.first_failure);
        ok = ok && r.ok;
        out.push_back(j);
    }
    return {{"ok", ok}, {"pairs", out}};
}

json cf_json(const CharacteristicFunction& cf) {
    json charts = json::array();
    for (const auto& ch : cf.charts) {
        json dims = json::array();
        for (const auto& [c, d] : ch.dims) dims.push_back({{"c", ints(c)}, {"dim", to_ll(d)}});
        charts.push_back({{"cone", ch.cone}, {"label", ints(ch.label)}, {"lo", ints(ch.lo)}, {"hi", ints(ch.hi)},
                          {"saturation", ints(ch.saturation)}, {"dims", dims}});
    }
    return charts;
}

json cmd_charfn(const StackyFan& fan, const SheafData& s, const std::optional<std::pair<IntVec, IntVec>>& win) {
    CharacteristicFunction cf = characteristic_function(fan, sheaf_windows(fan, s, win));
    return {{"charts", cf_json(cf)}, {"framed", cf_json(frame(fan, cf))}};
}

json cmd_stability(const StackyFan& fan, const SheafData& s) {
    Polarization pol = effective_polarization(fan);
    json out{{"rank", sheaf_rank(s)}, {"slope", rat_to_string(modified_slope(fan, pol, s))}};
    if (s.kind != "rank2_reflexive") {
        out["verdict"] = "stable";
        return out;
    }
    StabilityVerdict v = rank2_slope_stable(fan, pol, s.rank2);
    json cands = json::array();
    for (const auto& c : v.candidates)
        cands.push_back({{"line", point_json(c.line)}, {"B", ints(c.B)}, {"slope", rat_to_string(c.slope)}});
    DecomposabilityVerdict dec = rank2_decomposable(s.rank2);
    json basis = json::array();
    for (const auto& p : dec.witness) basis.push_back(point_json(p));
    out["verdict"] = to_string(v.verdict);
    out["candidates"] = cands;
    out["witness"] = v.witness;
    out["decomposable"] = dec.decomposable;
    out["splitting_basis"] = basis;
    return out;
}

json wps_compare(const IntVec& w, const Int& x0, std::size_t order) {
    const Int a = w[0], b = w[1], c = w[2];
    json rows = json::array();
    for (Int x = x0; x <= x0 + Int(order); ++x) {
        Rat f = wps_chi_formula(a, b, c, x);
        json row{{"x", to_ll(x)}, {"formula", rat_to_string(f)}};
        if (x >= a * b * c - 1) {
            Int o = wps_chi_oracle(a, b, c, x);
            row["oracle"] = to_ll(o);
            row["agree"] = Rat(o) == f;
        } else {
            row["oracle"] = nullptr;
        }
        rows.push_back(row);
    }
    return {{"weights", ints(w)}, {"rows", rows}};
}

json cmd_chi(const StackyFan& fan, const IntVec& B, bool compare, std::size_t order) {
    Polarization pol = effective_polarization(fan);
    json out{{"c1", ints(B)}, {"chi", to_ll(modified_chi(fan, pol, B))}};
    if (compare) {
        auto w = wps_weights(fan);
        if (!w) throw DomainError("--compare needs a weighted projective plane");
        Int abc = (*w)[0] * (*w)[1] * (*w)[2];
        out["compare"] = wps_compare(*w, std::max<Int>(degree(*w, B), Int(abc - 1)), order);
    }
    return out;
}

json cmd_zseries(const StackyFan& fan, const IntVec& B, bool compare, std::size_t order) {
    Polarization pol = effective_polarization(fan);
    ZOracle z = Z_oracle(fan, pol, B, order);
    json per = json::array();
    for (const auto& p : z.per_chart) per.push_back(ints(p));
    json out = series_json(z.series);
    out["per_chart"] = per;
    if (compare) {
        auto w = wps_weights(fan);
        if (!w) throw DomainError("--compare needs a weighted projective plane");
        QSeries closed = wps_Z_closed_form((*w)[0], (*w)[1], (*w)[2], degree(*w, B), order);
        IntVec diff(order + 1);
        for (std::size_t k = 0; k <= order; ++k) diff[k] = z.series.coeffs[k] - closed.coeffs[k];
        out["compare"] = {{"weights", ints(*w)},
                          {"closed_form", series_json(closed)},
                          {"coefficient_diff", ints(diff)},
                          {"leading_diff", rat_to_string(z.series.leading - closed.leading)},
                          {"agree", z.series == closed}};
    }
    return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"Toric DM stack sheaf computations", "toricstack"};
    app.require_subcommand(1);
    std::string fan_path, sheaf_path, out_path;
    std::size_t ci = 0, cj = 0, order = 10;
    std::vector<long long> window, c1, B;
    bool compare = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("fan", fan_path, "fan JSON file")->required();
        sub->add_option("--out", out_path, "write JSON here instead of stdout");
    };
    auto add_sheaf = [&](CLI::App* sub) {
        sub->add_option("sheaf", sheaf_path, "sheaf JSON file")->required();
        sub->add_option("--window", window, "lo1 .. lod hi1 .. hid")->allow_extra_args();
    };
    auto add_series = [&](CLI::App* sub) {
        sub->add_option("--c1", c1, "divisor coefficients, one per ray")->allow_extra_args();
        sub->add_option("--order", order, "truncation order");
        sub->add_flag("--compare", compare, "compare with the weighted projective closed form");
    };
    for (const char* name : {"validate", "gale", "localgroups", "box"}) add_common(app.add_subcommand(name));
    CLI::App* isect = app.add_subcommand("intersect");
    add_common(isect);
    isect->add_option("i", ci)->required();
    isect->add_option("j", cj)->required();
    CLI::App* pic = app.add_subcommand("picard");
    add_common(pic);
    pic->add_option("B", B, "one integer per ray")->required();
    for (const char* name : {"glue-check", "charfn", "stability"}) {
        CLI::App* sub = app.add_subcommand(name);
        add_common(sub);
        add_sheaf(sub);
    }
    for (const char* name : {"chi", "zseries"}) {
        CLI::App* sub = app.add_subcommand(name);
        add_common(sub);
        add_series(sub);
    }

    auto emit = [&](const json& j) {
        if (out_path.empty()) {
            out << j.dump() << "\n";
            return;
        }
        std::ofstream f(out_path);
        f << j.dump() << "\n";
    };

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        out << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        if (!out_path.empty() && !std::ofstream(out_path)) throw DomainError("cannot write " + out_path);
        StackyFan fan = load_fan(fan_path);
        json result;
        if (cmd == "validate") result = cmd_validate(fan);
        else if (cmd == "gale") result = cmd_gale(fan);
        else if (cmd == "localgroups") result = cmd_localgroups(fan);
        else if (cmd == "box") result = cmd_box(fan);
        else if (cmd == "intersect") result = cmd_intersect(fan, ci, cj);
        else if (cmd == "picard") result = cmd_picard(fan, IntVec(B.begin(), B.end()));
        else if (cmd == "chi") result = cmd_chi(fan, c1_arg(fan, c1), compare, order);
        else if (cmd == "zseries") result = cmd_zseries(fan, c1_arg(fan, c1), compare, order);
        else {
            SheafData s = load_sheaf(sheaf_path);
            if (cmd == "glue-check") result = cmd_glue(fan, s, window_arg(fan, window));
            else if (cmd == "charfn") result = cmd_charfn(fan, s, window_arg(fan, window));
            else result = cmd_stability(fan, s);
        }
        emit(result);
        return 0;
    } catch (const ParseError& e) {
        emit(json{{"error", e.what()}});
        return 2;
    } catch (const std::exception& e) {
        emit(json{{"error", e.what()}});
        return 1;
    }
}

}  // namespace ts
