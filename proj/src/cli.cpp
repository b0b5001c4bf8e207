#include "meanscape/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <istream>
#include <iterator>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "meanscape/algebra.hpp"
#include "meanscape/axioms.hpp"
#include "meanscape/errors.hpp"
#include "meanscape/expr.hpp"
#include "meanscape/interval.hpp"
#include "meanscape/mean.hpp"
#include "meanscape/metric.hpp"
#include "meanscape/middle.hpp"

namespace meanscape {

namespace {

using json = nlohmann::ordered_json;

/// Malformed flag values and other invocation mistakes.
class UsageError : public Error {
public:
    using Error::Error;
};

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void dump(const json& j, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad;
            out += json(it.key()).dump();
            out += ": ";
            dump(it.value(), indent + 2, out);
        }
        out += '\n';
        out.append(static_cast<std::size_t>(indent), ' ');
        out += '}';
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        bool first = true;
        for (const auto& v : j) {
            if (!first) out += ",\n";
            first = false;
            out += pad;
            dump(v, indent + 2, out);
        }
        out += '\n';
        out.append(static_cast<std::size_t>(indent), ' ');
        out += ']';
        return;
    }
    case json::value_t::number_float: {
        const double v = j.get<double>();
        out += std::isfinite(v) ? g17(v) : "null";
        return;
    }
    default:
        out += j.dump();
    }
}

double parse_number(const std::string& s, const std::string& flag) {
    const char* b = s.c_str();
    char* e = nullptr;
    const double v = std::strtod(b, &e);
    while (e && (*e == ' ' || *e == '\t')) ++e;
    if (e == b || *e != '\0' || std::isnan(v))
        throw UsageError(flag + ": '" + s + "' is not a number");
    return v;
}

double parse_finite(const std::string& s, const std::string& flag) {
    const double v = parse_number(s, flag);
    if (!std::isfinite(v)) throw UsageError(flag + ": '" + s + "' is not finite");
    return v;
}

std::pair<double, double> parse_pair(const std::string& s, const std::string& flag) {
    const auto c = s.find(',');
    if (c == std::string::npos || s.find(',', c + 1) != std::string::npos)
        throw UsageError(flag + " expects two comma-separated numbers, got '" + s + "'");
    return {parse_finite(s.substr(0, c), flag), parse_finite(s.substr(c + 1), flag)};
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

/// "lo,hi" (closed), or interval notation such as "(0,inf)" or "[0.1,10)".
Interval parse_interval(const std::string& raw, const std::string& flag) {
    std::string s = trim(raw);
    bool lo_closed = true;
    bool hi_closed = true;
    if (!s.empty() && (s.front() == '(' || s.front() == '[')) {
        if (s.size() < 2 || (s.back() != ')' && s.back() != ']'))
            throw UsageError(flag + ": unbalanced interval '" + raw + "'");
        lo_closed = s.front() == '[';
        hi_closed = s.back() == ']';
        s = s.substr(1, s.size() - 2);
    }
    const auto c = s.find(',');
    if (c == std::string::npos || s.find(',', c + 1) != std::string::npos)
        throw UsageError(flag + " expects lo,hi, got '" + raw + "'");
    const double lo = parse_number(trim(s.substr(0, c)), flag);
    const double hi = parse_number(trim(s.substr(c + 1)), flag);
    try {
        return Interval(lo, hi, lo_closed, hi_closed);
    } catch (const DomainError& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

json pair_json(double a, double b) { return json::array({a, b}); }
json interval_json(const Interval& i) { return pair_json(i.lo(), i.hi()); }

json trace_json(const IterationTrace& t, bool steps) {
    json j;
    j["converged"] = t.converged;
    j["limit"] = t.limit;
    j["iterations"] = t.iterations_used;
    j["envelope_k"] = t.envelope_k ? json(*t.envelope_k) : json(nullptr);
    j["envelope_ok"] = t.envelope_k ? json(t.envelope_ok) : json(nullptr);
    if (steps) {
        json rows = json::array();
        for (const auto& s : t.steps) rows.push_back({{"n", s.n}, {"x", s.x}, {"y", s.y}, {"gap", s.gap}});
        j["steps"] = std::move(rows);
    }
    return j;
}

std::string trace_csv(const IterationTrace& t) {
    std::string out = "n,x,y,gap\n";
    for (const auto& s : t.steps)
        out += std::to_string(s.n) + "," + g17(s.x) + "," + g17(s.y) + "," + g17(s.gap) + "\n";
    return out;
}

void merge(json& into, const json& from) {
    for (auto it = from.begin(); it != from.end(); ++it) into[it.key()] = it.value();
}

json estimate_json(const DistanceEstimate& d) {
    json j;
    j["value"] = d.value;
    j["argmax"] = pair_json(d.argmax.first, d.argmax.second);
    j["window"] = interval_json(d.window);
    j["refined"] = d.refined;
    j["grid_size"] = d.grid_size;
    return j;
}

struct Flags {
    std::string window;
    std::string domain = "(0,inf)";
    std::string format = "json";
    std::string out;
    std::size_t grid = 256;
    std::size_t max_iter = 200;
    std::size_t samples = 1000;
    double tol = 1e-13;
    std::uint64_t seed = 7;

    std::string mean, m0, m1, m2, weight, w1, w2, at, windows;
    bool via_phi = false, trace = false, generic = false, illinois = false;
    bool assume_monotone = false, assume_continuous = false;
};

class Session {
public:
    Session(const Flags& f, std::istream& in, std::vector<std::string>& diagnostics)
        : f_(f), in_(in), diags_(diagnostics), domain_(parse_interval(f.domain, "--domain")) {}

    const Interval& domain() const { return domain_; }

    Interval window() const {
        if (f_.window.empty()) return default_window(domain_);
        const auto [lo, hi] = parse_pair(f_.window, "--window");
        if (!(lo < hi)) throw UsageError("--window needs lo < hi");
        const Interval w = Interval::closed(lo, hi);
        if (!domain_.contains(w))
            throw UsageError("--window " + w.to_string() + " is not inside the domain " +
                             domain_.to_string());
        return w;
    }

    std::pair<double, double> at() const {
        if (f_.at.empty()) throw UsageError("--at x,y is required");
        return parse_pair(f_.at, "--at");
    }

    MeanFunction mean(const std::string& text, const std::string& flag) {
        const std::string src = source(text, flag);
        const Expression e = parse_mean_expr(src);
        MeanExpression me = expr_to_mean(e, domain_, {f_.samples, f_.seed});
        for (auto& d : me.diagnostics) diags_.push_back(std::move(d));
        MeanTraits t = me.mean.traits();
        if (f_.assume_monotone) t.monotone = true;
        if (f_.assume_continuous) t.continuous = true;
        return me.mean.with_traits(t);
    }

    WeightFunction weight(const std::string& text, const std::string& flag) {
        return expr_to_weight(parse_weight_expr(source(text, flag)), domain_);
    }

private:
    std::string source(const std::string& text, const std::string& flag) {
        if (text.empty()) throw UsageError(flag + " is required");
        if (text != "-") return text;
        if (stdin_used_) throw UsageError("only one expression can be read from stdin");
        stdin_used_ = true;
        std::string s((std::istreambuf_iterator<char>(in_)), std::istreambuf_iterator<char>());
        s = trim(s);
        if (s.empty()) throw UsageError(flag + ": empty expression on stdin");
        return s;
    }

    const Flags& f_;
    std::istream& in_;
    std::vector<std::string>& diags_;
    Interval domain_;
    bool stdin_used_ = false;
};

CompoundOptions compound_options(const Flags& f) {
    CompoundOptions o;
    o.tolerance = f.tol;
    o.max_iterations = f.max_iter;
    o.applicability_grid = std::min<std::size_t>(f.grid, 64);
    return o;
}

json compound_payload(const CompoundMean& c, double x, double y, bool steps, CommandResult& r) {
    json j;
    j["m1"] = c.m1().name();
    j["m2"] = c.m2().name();
    j["x"] = x;
    j["y"] = y;
    j["route"] = std::string(to_string(c.route()));
    const auto k = c.contraction_estimate();
    j["contraction_estimate"] = k ? json(*k) : json(nullptr);
    if (!c.applicability_note().empty()) r.diagnostics.push_back(c.applicability_note());
    if (!c.convergence_guaranteed())
        r.diagnostics.push_back("convergence is not guaranteed: no contraction and means not known "
                                "to be continuous");
    const IterationTrace t = c.trace(x, y);
    merge(j, trace_json(t, steps));
    if (steps && t.envelope_k && !t.envelope_ok)
        r.diagnostics.push_back("trace violates the contraction envelope for k = " + g17(*t.envelope_k));
    if (steps) r.output = trace_csv(t);  // used only when --format csv
    return j;
}

using Handler = std::function<json(Session&, const Flags&, CommandResult&)>;

std::map<std::string, Handler> handlers() {
    std::map<std::string, Handler> h;

    h["eval"] = [](Session& s, const Flags& f, CommandResult&) {
        const MeanFunction m = s.mean(f.mean, "--mean");
        const auto [x, y] = s.at();
        return json{{"mean", m.name()}, {"x", x}, {"y", y}, {"value", m(x, y)}};
    };
    h["star"] = [](Session& s, const Flags& f, CommandResult&) {
        const MeanFunction a = s.mean(f.m1, "--m1");
        const MeanFunction b = s.mean(f.m2, "--m2");
        const auto [x, y] = s.at();
        return json{{"m1", a.name()}, {"m2", b.name()}, {"x", x}, {"y", y}, {"value", star(a, b)(x, y)}};
    };
    h["inverse"] = [](Session& s, const Flags& f, CommandResult&) {
        const MeanFunction m = s.mean(f.mean, "--mean");
        const auto [x, y] = s.at();
        return json{{"mean", m.name()}, {"x", x}, {"y", y}, {"value", group_inverse(m)(x, y)}};
    };
    h["symmetry"] = [](Session& s, const Flags& f, CommandResult&) {
        const MeanFunction a = s.mean(f.m0, "--m0");
        const MeanFunction b = s.mean(f.m1, "--m1");
        const auto [x, y] = s.at();
        const bool closed = !f.generic && a.builtin() != Builtin::None;
        return json{{"m0", a.name()}, {"m1", b.name()}, {"x", x}, {"y", y},
                    {"value", group_symmetry(a, b, !f.generic)(x, y)}, {"closed_form", closed}};
    };
    h["sigma"] = [](Session& s, const Flags& f, CommandResult&) {
        const MeanFunction a = s.mean(f.m0, "--m0");
        const MeanFunction b = s.mean(f.m1, "--m1");
        const auto [x, y] = s.at();
        SigmaOptions o;
        o.mode = f.illinois ? SolverMode::Illinois : SolverMode::Bisection;
        return json{{"m0", a.name()}, {"m1", b.name()}, {"x", x}, {"y", y},
                    {"value", functional_symmetric(a, b, x, y, o)},
                    {"solver", f.illinois ? "illinois" : "bisection"}};
    };
    h["normal"] = [](Session& s, const Flags& f, CommandResult& r) {
        const WeightFunction w = s.weight(f.weight, "--weight");
        const MeanFunction m = make_normal_mean(w);
        const AxiomReport rep = verify_axioms(m, s.window(), f.samples, f.seed);
        for (const auto& e : rep.evaluation_faults) r.diagnostics.push_back("weight evaluation fault: " + e);
        json j{{"weight", w.name()}, {"mean", m.name()}, {"axioms_ok", rep.all_ok()}};
        if (!f.at.empty()) {
            const auto [x, y] = s.at();
            j["x"] = x;
            j["y"] = y;
            j["value"] = m(x, y);
        }
        return j;
    };
    h["compare"] = [](Session& s, const Flags& f, CommandResult&) {
        const WeightFunction p1 = s.weight(f.w1, "--w1");
        const Interval win = s.window();
        json j{{"w1", p1.name()}};
        OrderRelation rel;
        if (f.w2.empty()) {
            j["w2"] = "1";
            rel = classify_vs_arithmetic(p1, win, f.samples);
        } else {
            const WeightFunction p2 = s.weight(f.w2, "--w2");
            j["w2"] = p2.name();
            rel = compare_normal(p1, p2, win, f.samples);
        }
        j["window"] = interval_json(win);
        j["samples"] = f.samples;
        j["relation"] = std::string(to_string(rel));
        return j;
    };
    h["distance"] = [](Session& s, const Flags& f, CommandResult&) {
        const MeanFunction a = s.mean(f.m1, "--m1");
        const MeanFunction b = s.mean(f.m2, "--m2");
        const Interval win = s.window();
        const DistanceEstimate d =
            f.via_phi ? distance_via_phi(a, b, win, f.grid) : distance(a, b, win, f.grid);
        json j{{"m1", a.name()}, {"m2", b.name()}, {"method", f.via_phi ? "phi" : "direct"}};
        merge(j, estimate_json(d));
        return j;
    };
    h["dist-to-a"] = [](Session& s, const Flags& f, CommandResult&) {
        const MeanFunction m = s.mean(f.mean, "--mean");
        const DistanceEstimate d = distance_to_arithmetic(m, s.window(), f.grid);
        json j{{"mean", m.name()}};
        merge(j, estimate_json(d));
        j["sup_phi"] = d.objective_sup;
        return j;
    };
    h["border"] = [](Session& s, const Flags& f, CommandResult&) {
        const MeanFunction m = s.mean(f.mean, "--mean");
        std::vector<Interval> wins;
        const std::string list = f.windows.empty() ? "1,10;0.1,100;0.01,10000" : f.windows;
        std::stringstream ss(list);
        for (std::string part; std::getline(ss, part, ';');) {
            const auto [lo, hi] = parse_pair(part, "--windows");
            if (!(lo < hi)) throw UsageError("--windows needs lo < hi in every window");
            wins.push_back(Interval::closed(lo, hi));
        }
        const BorderDiagnostic b = border_diagnostic(m, wins, std::min<std::size_t>(f.grid, 128));
        json rows = json::array();
        for (std::size_t i = 0; i < b.windows_tested.size(); ++i)
            rows.push_back({{"lo", b.windows_tested[i].lo()},
                            {"hi", b.windows_tested[i].hi()},
                            {"sup_phi", b.sup_per_window[i]},
                            {"distance_to_a", arithmetic_distance_from_sup(b.sup_per_window[i])}});
        return json{{"mean", m.name()},
                    {"trend", std::string(to_string(b.trend))},
                    {"sup_f_estimate", b.sup_f_estimate},
                    {"windows", rows}};
    };
    h["gh-cert"] = [](Session&, const Flags&, CommandResult&) {
        const GhCertificate c = distance_gh_certificate();
        return json{{"value", c.value},
                    {"quartic_residual", c.quartic_residual},
                    {"minimal_polynomial_residual", c.minimal_polynomial_residual},
                    {"argmax_t", c.argmax_t}};
    };
    h["compound"] = [](Session& s, const Flags& f, CommandResult& r) {
        const MeanFunction a = s.mean(f.m1, "--m1");
        const MeanFunction b = s.mean(f.m2, "--m2");
        const auto [x, y] = s.at();
        return compound_payload(CompoundMean(a, b, compound_options(f)), x, y, f.trace, r);
    };
    h["m-arith"] = [](Session& s, const Flags& f, CommandResult& r) {
        const MeanFunction m = s.mean(f.mean, "--mean");
        const auto [x, y] = s.at();
        json j = compound_payload(m_arithmetic(m, compound_options(f)), x, y, f.trace, r);
        j["mean"] = m.name();
        return j;
    };
    h["coincide"] = [](Session& s, const Flags& f, CommandResult&) {
        const MeanFunction m = s.mean(f.mean, "--mean");
        const Interval win = s.window();
        const CoincidenceResult c = coincidence_probe(m, win, f.samples, f.seed);
        return json{{"mean", m.name()},
                    {"window", interval_json(win)},
                    {"points", c.points},
                    {"max_discrepancy", c.max_discrepancy},
                    {"worst_point", pair_json(c.worst_point.first, c.worst_point.second)},
                    {"worst_test_mean", c.worst_test_mean},
                    {"test_means", c.test_means}};
    };
    h["verify"] = [](Session& s, const Flags& f, CommandResult&) {
        const MeanFunction m = s.mean(f.mean, "--mean");
        const Interval win = s.window();
        const AxiomReport rep = verify_axioms(m, win, f.samples, f.seed);
        json ces = json::array();
        for (const auto& c : rep.counterexamples)
            ces.push_back({{"axiom", static_cast<int>(c.axiom)}, {"x", c.x}, {"y", c.y}, {"value", c.value}});
        return json{{"mean", m.name()},
                    {"window", interval_json(win)},
                    {"samples", rep.samples_used},
                    {"seed", f.seed},
                    {"axiom_i_ok", rep.axiom_i_ok},
                    {"axiom_ii_ok", rep.axiom_ii_ok},
                    {"axiom_iii_ok", rep.axiom_iii_ok},
                    {"counterexamples", ces},
                    {"evaluation_faults", rep.evaluation_faults}};
    };
    h["counterexample"] = [](Session&, const Flags& f, CommandResult&) {
        const CounterexampleReport c = theorem1_counterexample_check(f.seed);
        return json{{"d_estimate", c.d_estimate},
                    {"compound_is_a", c.compound_is_A},
                    {"max_deviation", c.max_deviation},
                    {"samples", c.samples}};
    };
    return h;
}

void fail(CommandResult& r, int code, const std::string& message) {
    r.status = CommandResult::Status::Error;
    r.exit_code = code;
    r.payload = json::object();
    r.diagnostics.push_back(message);
}

} // namespace

std::string dump_json(const nlohmann::ordered_json& j) {
    std::string out;
    dump(j, 0, out);
    return out;
}

std::string render_json(const CommandResult& r) {
    json top;
    top["status"] = r.status == CommandResult::Status::Ok ? "ok" : "error";
    top["payload"] = r.payload;
    top["diagnostics"] = r.diagnostics;
    return dump_json(top) + "\n";
}

CommandResult cli_run(const std::vector<std::string>& args, std::istream& in) {
    CommandResult r;
    Flags f;

    if (const char* env = std::getenv("MEANSCAPE_SEED")) {
        char* e = nullptr;
        const unsigned long long v = std::strtoull(env, &e, 10);
        if (*env == '\0' || *e != '\0') {
            fail(r, 1, std::string("MEANSCAPE_SEED is not an unsigned integer: '") + env + "'");
            r.output = render_json(r);
            return r;
        }
        f.seed = v;
    }

    CLI::App app{"Two-variable means: group law, metric and compound iteration", "meanscape"};
    app.require_subcommand(1);
    app.add_option("--window", f.window, "Sampling window lo,hi (default from the domain)");
    app.add_option("--domain", f.domain, "Domain interval, e.g. (0,inf) or [-1,1]")->capture_default_str();
    app.add_option("--grid", f.grid, "Coarse grid size for supremum searches")->capture_default_str();
    app.add_option("--tol", f.tol, "Relative tolerance of compound iterations")->capture_default_str();
    app.add_option("--max-iter", f.max_iter, "Iteration cap for compound means")->capture_default_str();
    app.add_option("--samples", f.samples, "Sample count for verify, compare, normal, coincide")
        ->capture_default_str();
    app.add_option("--seed", f.seed, "Seed (MEANSCAPE_SEED overrides the default)")->capture_default_str();
    app.add_option("--format", f.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", f.out, "Write output to PATH instead of stdout");

    const auto sub = [&](const char* name, const char* help) {
        auto* s = app.add_subcommand(name, help);
        s->fallthrough();
        return s;
    };
    const auto opt = [](CLI::App* s, const char* name, std::string& v, const char* help) {
        s->add_option(name, v, help);
    };
    const char* mean_help = "Mean expression in x, y (or A, G, H, AGM; '-' reads stdin)";

    auto* c = sub("eval", "Evaluate a mean at a point");
    opt(c, "--mean", f.mean, mean_help);
    opt(c, "--at", f.at, "Point x,y");
    c = sub("star", "Group product M1 * M2 at a point");
    opt(c, "--m1", f.m1, mean_help);
    opt(c, "--m2", f.m2, mean_help);
    opt(c, "--at", f.at, "Point x,y");
    c = sub("inverse", "Group inverse x + y - M at a point");
    opt(c, "--mean", f.mean, mean_help);
    opt(c, "--at", f.at, "Point x,y");
    c = sub("symmetry", "Reflection S_M0(M1) at a point");
    opt(c, "--m0", f.m0, mean_help);
    opt(c, "--m1", f.m1, mean_help);
    opt(c, "--at", f.at, "Point x,y");
    c->add_flag("--generic", f.generic, "Skip the closed forms for A, G, H");
    c = sub("sigma", "Functional symmetric sigma_M0(M1) at a point");
    opt(c, "--m0", f.m0, mean_help);
    opt(c, "--m1", f.m1, mean_help);
    opt(c, "--at", f.at, "Point x,y");
    c->add_flag("--illinois", f.illinois, "Illinois solver instead of bisection");
    c->add_flag("--assume-monotone", f.assume_monotone, "Declare expression means monotone");
    c = sub("normal", "Normal mean from a weight in t");
    opt(c, "--weight", f.weight, "Weight expression in t");
    opt(c, "--at", f.at, "Optional point x,y");
    c = sub("compare", "Order two normal means by their weights");
    opt(c, "--w1", f.w1, "Weight expression in t");
    opt(c, "--w2", f.w2, "Weight expression in t (default: the constant 1, i.e. A)");
    c = sub("distance", "Distance d(M1, M2) over the window");
    opt(c, "--m1", f.m1, mean_help);
    opt(c, "--m2", f.m2, mean_help);
    c->add_flag("--via-phi", f.via_phi, "Compute through the isomorphism");
    c = sub("dist-to-a", "Distance to the arithmetic mean");
    opt(c, "--mean", f.mean, mean_help);
    c = sub("border", "sup phi(M) over growing windows");
    opt(c, "--mean", f.mean, mean_help);
    opt(c, "--windows", f.windows, "Nested windows lo,hi;lo,hi;...");
    sub("gh-cert", "Certified d(G, H)");
    c = sub("compound", "Compound mean of M1 and M2 at a point");
    opt(c, "--m1", f.m1, mean_help);
    opt(c, "--m2", f.m2, mean_help);
    opt(c, "--at", f.at, "Point x,y");
    c->add_flag("--trace", f.trace, "Include the iteration trace");
    c->add_flag("--assume-continuous", f.assume_continuous, "Declare expression means continuous");
    c = sub("m-arith", "Compound of A with a mean at a point");
    opt(c, "--mean", f.mean, mean_help);
    opt(c, "--at", f.at, "Point x,y");
    c->add_flag("--trace", f.trace, "Include the iteration trace");
    c->add_flag("--assume-continuous", f.assume_continuous, "Declare the mean continuous");
    c = sub("coincide", "Compare group and functional reflections of test means");
    opt(c, "--mean", f.mean, mean_help);
    c->add_flag("--assume-monotone", f.assume_monotone, "Declare the mean monotone");
    c = sub("verify", "Sample the mean axioms");
    opt(c, "--mean", f.mean, mean_help);
    sub("counterexample", "G and x + y - G: distance 1, compound A");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        r.output = app.help();
        return r;
    } catch (const CLI::CallForAllHelp&) {
        r.output = app.help("", CLI::AppFormatMode::All);
        return r;
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        if (!args.empty() && args[0].rfind('-', 0) != 0 && !app.get_subcommand_no_throw(args[0]))
            msg = "unknown subcommand '" + args[0] + "'";
        fail(r, 1, msg);
        r.error_output = msg + "\n" + app.help();
        r.output = render_json(r);
        return r;
    }
    if (!f.out.empty()) r.out_path = f.out;

    const std::string name = app.get_subcommands().front()->get_name();
    const bool csv = f.format == "csv";
    try {
        if (csv && !((name == "compound" || name == "m-arith") && f.trace))
            throw UsageError("--format csv is only available for iteration traces (compound or "
                             "m-arith with --trace)");
        if (!(f.tol > 0.0)) throw UsageError("--tol must be positive");
        if (f.max_iter < 1) throw UsageError("--max-iter must be at least 1");
        Session session(f, in, r.diagnostics);
        r.payload = handlers().at(name)(session, f, r);
    } catch (const ConvergenceError& e) {
        fail(r, 2, e.what());
        r.payload = trace_json(e.trace(), true);
    } catch (const NumericalFailure& e) {
        fail(r, 2, e.what());
    } catch (const Error& e) {
        fail(r, 1, e.what());
    } catch (const std::exception& e) {
        fail(r, 2, std::string("internal failure: ") + e.what());
    }
    if (!(csv && r.status == CommandResult::Status::Ok)) r.output = render_json(r);
    return r;
}

} // namespace meanscape
