// Command-line front end: generate pairs, sample magnitudes, verify agreement,
// run transforms and the series / Jensen / gamma checks.
//
// Exit codes: 0 success or agreement, 2 disagreement (or a violated bound),
// 1 on any error, including inconclusive verification.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "phaseret/ambiguity.hpp"
#include "phaseret/analysis.hpp"
#include "phaseret/errors.hpp"
#include "phaseret/hadamard.hpp"
#include "phaseret/io.hpp"
#include "phaseret/lines.hpp"
#include "phaseret/transforms.hpp"

namespace {

using namespace phaseret;
using io::Json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDisagree = 2;

struct RunConfig {
    std::string command;
    std::string kind = "quartic";
    std::string form_path;
    std::string pair_path;
    std::string which = "f";
    std::string lines;
    std::string grid;
    std::string out;
    std::string format;
    std::string series_id = "pi_identity";
    std::string signal = "gaussian";
    std::string op = "residual";
    std::string theta = "pi/2";
    std::string lattice;
    std::vector<std::string> yu;
    std::vector<std::string> points;
    std::vector<double> radii{1.0, 2.0, 5.0, 10.0, 50.0};
    std::vector<double> lambdas{1.5, 2.0, 2.5, 3.0, 5.0};
    long truncation = 2000;
    long series_K = 1000000;
    double tol = 1e-8;
    double tau = 1.0;
    double b = 0.0;
    double b_prime = 0.0;
    bool b_prime_set = false;
    int m = 1;
    int n_max = 3;
    int degree = 64;
};

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw PreconditionError("cannot write " + cfg.out);
    f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// "re,im" or "re,im,multiplicity"
WeightedPoint parse_point(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 2 && parts.size() != 3) throw PreconditionError("point must be re,im[,multiplicity]: " + s);
    try {
        WeightedPoint p{{std::stod(parts[0]), std::stod(parts[1])}, 1};
        if (parts.size() == 3) p.multiplicity = std::stoi(parts[2]);
        return p;
    } catch (const std::logic_error&) {
        throw PreconditionError("cannot parse point '" + s + "'");
    }
}

std::vector<WeightedPoint> parse_points(const std::vector<std::string>& v) {
    std::vector<WeightedPoint> out;
    for (const auto& s : v) out.push_back(parse_point(s));
    return out;
}

Grid grid_or(const RunConfig& cfg, Grid fallback) { return cfg.grid.empty() ? fallback : parse_grid(cfg.grid); }

int run_gen(const RunConfig& cfg) {
    const auto yu = parse_points(cfg.yu);
    AmbiguityPair pair;
    if (cfg.kind == "quartic") {
        pair = quartic_pair();
    } else if (cfg.kind == "coshsinh") {
        pair = coshsinh_pair();
    } else if (cfg.kind == "mcdonald") {
        PairData d;
        if (cfg.b != 0.0 || cfg.b_prime_set) {
            d.poly_f = {{0.0, cfg.b}};
            d.poly_g = {{0.0, cfg.b_prime}};
        }
        RootSystem Y;
        Y.explicit_roots = yu;
        pair = mcdonald_pair(d, Y);
    } else if (cfg.kind == "rational") {
        pair = rational_angle_pair(parse_angle(cfg.theta), PairData{}, yu);
    } else if (cfg.kind == "parallel") {
        PairData d;
        d.p = Genus{1};
        const auto rhs = coeff_relation_rhs(cfg.tau, yu, d.p, 0.0, 1, cfg.series_K);
        d.poly_f = {{0.0, cfg.b}};
        d.poly_g = {{0.0, cfg.b - rhs.value / cfg.tau}};
        pair = parallel_pair(cfg.tau, d, yu, cfg.tol, cfg.series_K);
    } else if (cfg.kind == "infinite") {
        pair = infinite_lines_pair(cfg.tau, 1.0, 0.0, 0.0, 0.0, cfg.b, RootSystem{}, yu, cfg.series_K);
    } else if (cfg.kind == "universal") {
        const auto partner = universal_partner(cfg.m, cfg.n_max, cfg.series_K);
        pair.f = universal_base(cfg.n_max);
        pair.g = partner.form;
        pair.constraint.kind = PairConstraint::Kind::infinite_lines;
        pair.constraint.tau = 1.0 / cfg.m;
        pair.constraint.series_K = cfg.series_K;
        pair.constraint.series_value = partner.b_m;
        pair.constraint.series_tail = partner.tail;
        const Complex a = pair.f.roots.orbits[static_cast<std::size_t>(cfg.m - 1)].base;
        pair.decomposition.exclusive.orbits.push_back(pair.f.roots.orbits[static_cast<std::size_t>(cfg.m - 1)]);
        pair.decomposition.fundamental.explicit_roots.push_back({a, 1});
        for (int n = 1; n <= cfg.n_max; ++n) {
            if (n != cfg.m) pair.decomposition.common.orbits.push_back(pair.f.roots.orbits[static_cast<std::size_t>(n - 1)]);
        }
    } else {
        throw PreconditionError("unknown pair kind '" + cfg.kind + "'");
    }
    emit(cfg, dump(io::to_json(pair)));
    return kExitOk;
}

HadamardForm load_form(const RunConfig& cfg) {
    if (!cfg.form_path.empty()) return io::form_from_json(io::read_json_file(cfg.form_path));
    if (cfg.pair_path.empty()) throw PreconditionError("need --form or --pair");
    const auto pair = io::pair_from_json(io::read_json_file(cfg.pair_path));
    if (cfg.which == "f") return pair.f;
    if (cfg.which == "g") return pair.g;
    throw PreconditionError("--which must be f or g");
}

int run_eval(const RunConfig& cfg) {
    const auto form = load_form(cfg);
    const auto lines = parse_lines(cfg.lines.empty() ? "R" : cfg.lines, grid_or(cfg, Grid{}));
    std::vector<MagnitudeProfile> profiles;
    for (const auto& l : lines) profiles.push_back(magnitude_on_line(form, l, cfg.truncation));
    if (cfg.format == "json") {
        Json j = Json::array();
        for (const auto& p : profiles) {
            Json samples = Json::array();
            for (const auto& s : p.samples) samples.push_back({{"x", s.x}, {"magnitude", s.magnitude}, {"tail_error", s.tail_error}});
            j.push_back({{"line_id", p.line.id}, {"samples", samples}});
        }
        emit(cfg, dump(j));
    } else {
        std::ostringstream os;
        write_profiles_csv(os, profiles);
        emit(cfg, os.str());
    }
    return kExitOk;
}

int run_verify(const RunConfig& cfg) {
    if (cfg.pair_path.empty()) throw PreconditionError("verify needs --pair");
    if (!(cfg.tol > 0.0)) throw PreconditionError("--tol must be > 0");
    const auto pair = io::pair_from_json(io::read_json_file(cfg.pair_path));
    const Grid grid = grid_or(cfg, Grid{});
    const auto lines = cfg.lines.empty() ? declared_lines(pair.constraint, grid.min, grid.max, grid.count)
                                         : parse_lines(cfg.lines, grid);
    const auto reports = verify_pair(pair.f, pair.g, lines, cfg.truncation, cfg.tol);
    const Verdict verdict = overall_verdict(reports);

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "line_id,verdict,deviation,argmax_x,tail,combined_tolerance\n";
        for (const auto& r : reports) {
            os << r.line_id << ',' << to_string(r.verdict) << ',' << fmt(r.deviation) << ',' << fmt(r.argmax_x) << ','
               << fmt(r.tail) << ',' << fmt(r.combined_tolerance) << '\n';
        }
        emit(cfg, os.str());
    } else {
        Json j{{"pair", cfg.pair_path},
               {"truncation", cfg.truncation},
               {"tolerance", cfg.tol},
               {"verdict", to_string(verdict)},
               {"lines", Json::array()}};
        for (const auto& r : reports) j["lines"].push_back(io::to_json(r));
        emit(cfg, dump(j));
    }
    switch (verdict) {
        case Verdict::agree:
            return kExitOk;
        case Verdict::disagree:
            return kExitDisagree;
        case Verdict::inconclusive:
            std::cerr << "verify: inconclusive, truncation error exceeds the tolerance; raise --truncation\n";
            return kExitError;
    }
    return kExitError;
}

SignalSamples named_signal(const std::string& name) {
    if (name == "gaussian") return signals::gaussian();
    if (name == "quartic") return signals::quartic_preimage();
    if (name == "coshsinh") return signals::coshsinh(1);
    if (name == "coshsinh-minus") return signals::coshsinh(-1);
    throw PreconditionError("unknown signal '" + name + "' (gaussian, quartic, coshsinh, coshsinh-minus)");
}

// Bargmann image of a named signal, in closed form.
std::function<Complex(Complex)> named_entire(const std::string& name) {
    if (name == "gaussian") return [](Complex) { return Complex{1.0 / std::numbers::sqrt2, 0.0}; };
    if (name == "quartic") {
        return [](Complex z) { return 1.0 - z * z / (Complex{1.0, 1.0} * Complex{1.0, 1.0}); };
    }
    if (name == "coshsinh") return closed_form_coshsinh(1);
    if (name == "coshsinh-minus") return closed_form_coshsinh(-1);
    throw PreconditionError("unknown signal '" + name + "'");
}

int run_transform(const RunConfig& cfg) {
    if (cfg.op == "export" || cfg.op == "inverse") {
        const Grid g = grid_or(cfg, Grid{-3.0, 3.0, 121});
        SignalSamples sig;
        if (cfg.op == "export") {
            sig = named_signal(cfg.signal);
        } else if (!cfg.form_path.empty()) {
            const auto form = io::form_from_json(io::read_json_file(cfg.form_path));
            const long K = cfg.truncation;
            sig = InverseBargmann([form, K](Complex z) { return evaluate(form, z, K).value; }, cfg.degree).signal();
        } else {
            sig = InverseBargmann(named_entire(cfg.signal), cfg.degree).signal();
        }
        std::ostringstream os;
        write_signal_csv(os, sig, g.min, g.max, g.count);
        emit(cfg, os.str());
        return kExitOk;
    }
    const auto sig = named_signal(cfg.signal);
    const auto pts = cfg.points.empty() ? std::vector<WeightedPoint>{{{0.0, 0.0}, 1}} : parse_points(cfg.points);
    Json out = Json::array();
    for (const auto& p : pts) {
        const double x = p.z.real(), w = p.z.imag();
        Json rec{{"point", {{"x", x}, {"omega", w}}}};
        if (cfg.op == "gabor") {
            rec["value"] = io::to_json(gabor_transform(sig, x, w));
        } else if (cfg.op == "bargmann") {
            rec["value"] = io::to_json(bargmann_transform(sig, p.z));
        } else if (cfg.op == "residual") {
            rec["value"] = io::to_json(gabor_transform(sig, x, -w));
            rec["residual"] = gabor_bargmann_residual(sig, x, w);
        } else {
            throw PreconditionError("unknown transform op '" + cfg.op + "' (gabor, bargmann, residual, inverse, export)");
        }
        out.push_back(rec);
    }
    emit(cfg, dump(out));
    return kExitOk;
}

int run_jensen(const RunConfig& cfg) {
    RootSystem roots;
    JensenBoundInput in;
    Json j;
    if (!cfg.lattice.empty()) {
        const auto ab = parse_point(cfg.lattice);
        const double a = ab.z.real(), b = ab.z.imag();
        double rmax = 0.0;
        for (const double r : cfg.radii) rmax = std::max(rmax, r);
        roots = lattice_roots(a, b, rmax);
        // Bf = z (lead 1) with ||f||^2 = sqrt(2) e: the extreme admissible normalisation
        in.k = 1;
        in.l2_norm_sq = std::numbers::sqrt2 * std::numbers::e;
        const auto v = lattice_density_verdict(a, b);
        j["lattice"] = {{"a", a}, {"b", b}, {"regime", to_string(v.regime)}, {"ab", v.density_product}, {"note", v.note}};
    } else {
        const auto sig = named_signal(cfg.signal);
        in.lead = bargmann_transform(sig, {0.0, 0.0});
        const double n2 = l2_norm(sig);
        in.l2_norm_sq = n2 * n2;
        if (cfg.signal == "coshsinh" || cfg.signal == "coshsinh-minus") {
            const double s = cfg.signal == "coshsinh" ? 0.5 : -0.5;
            roots.orbits.push_back(RootOrbit::translation({0.0, s}, {0.0, 2.0}));
        } else if (cfg.signal == "quartic") {
            roots.orbits.push_back(RootOrbit::rotation({1.0, 1.0}, std::numbers::pi / 2.0));
        }
    }
    const double c = jensen_c(in);
    j["c"] = c;
    j["k"] = in.k;
    j["checks"] = Json::array();
    bool all = true;
    for (const double r : cfg.radii) {
        const long n = root_count(roots, r);
        const double bound = jensen_bound(in, r);
        const bool holds = static_cast<double>(n) <= bound;
        all = all && holds;
        j["checks"].push_back({{"r", r}, {"count", n}, {"bound", bound}, {"holds", holds}});
    }
    j["holds"] = all;
    emit(cfg, dump(j));
    return all ? kExitOk : kExitDisagree;
}

int run_series(const RunConfig& cfg) {
    SeriesValue s;
    if (cfg.series_id == "pi_identity") {
        s = universal_series_sum(SeriesId::pi_identity, cfg.series_K);
    } else if (cfg.series_id == "b_m") {
        s = universal_series_sum(SeriesId::b_m, cfg.series_K, cfg.m);
    } else {
        throw PreconditionError("unknown series id '" + cfg.series_id + "' (pi_identity, b_m)");
    }
    if (cfg.format == "json") {
        emit(cfg, dump(Json{{"id", cfg.series_id}, {"K", s.K}, {"value", s.value}, {"tail", s.tail}}));
    } else {
        emit(cfg, fmt(s.value) + " " + fmt(s.tail) + "\n");
    }
    return kExitOk;
}

int run_gamma(const RunConfig& cfg) {
    Json out = Json::array();
    for (const double l : cfg.lambdas) {
        const double closed = gamma_integral(l);
        const double quad = gamma_integral_quadrature(l);
        out.push_back({{"lambda", l}, {"closed_form", closed}, {"quadrature", quad}, {"difference", std::abs(closed - quad)}});
    }
    emit(cfg, dump(out));
    return kExitOk;
}

int run(const RunConfig& cfg) {
    if (cfg.command == "gen") return run_gen(cfg);
    if (cfg.command == "eval") return run_eval(cfg);
    if (cfg.command == "verify") return run_verify(cfg);
    if (cfg.command == "transform") return run_transform(cfg);
    if (cfg.command == "jensen") return run_jensen(cfg);
    if (cfg.command == "series") return run_series(cfg);
    if (cfg.command == "gamma") return run_gamma(cfg);
    throw PreconditionError("no command given");
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Phase retrieval ambiguities for entire functions and Gabor transforms"};
    app.require_subcommand(1);

    const auto add_out = [&](CLI::App* sub, const std::string& formats) {
        sub->add_option("--out", cfg.out, "Output file (default stdout)");
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(CLI::detail::split(formats, ',')));
    };

    auto* gen = app.add_subcommand("gen", "Generate a pair manifest");
    gen->add_option("--kind", cfg.kind, "quartic, coshsinh, mcdonald, rational, parallel, infinite, universal");
    gen->add_option("--theta", cfg.theta, "Angle for rational pairs, e.g. pi/3");
    gen->add_option("--tau", cfg.tau, "Line spacing for parallel and infinite pairs");
    gen->add_option("--yu", cfg.yu, "Fundamental-domain root re,im[,mult]; repeatable");
    gen->add_option("--b", cfg.b, "Im c_1 of f");
    gen->add_option("--b-prime", cfg.b_prime, "Im c_1 of g (mcdonald)")->each([&](const std::string&) { cfg.b_prime_set = true; });
    gen->add_option("--m", cfg.m, "Universal partner index");
    gen->add_option("--nmax", cfg.n_max, "Universal family size");
    gen->add_option("--series-K", cfg.series_K, "Symmetric series truncation");
    gen->add_option("--tol", cfg.tol, "Coefficient-relation tolerance");
    add_out(gen, "json");

    auto* ev = app.add_subcommand("eval", "Sample |f| along lines");
    ev->add_option("--form", cfg.form_path, "Hadamard form JSON");
    ev->add_option("--pair", cfg.pair_path, "Pair manifest JSON");
    ev->add_option("--which", cfg.which, "f or g when reading a pair");
    ev->add_option("--lines", cfg.lines, "Line list, e.g. R,iR,R+0.5i");
    ev->add_option("--grid", cfg.grid, "min:max:count");
    ev->add_option("--truncation", cfg.truncation, "Orbit truncation K");
    add_out(ev, "csv,json");

    auto* ver = app.add_subcommand("verify", "Check magnitude agreement of a pair");
    ver->add_option("--pair", cfg.pair_path, "Pair manifest JSON")->required();
    ver->add_option("--lines", cfg.lines, "Line list (default: the pair's declared lines)");
    ver->add_option("--grid", cfg.grid, "min:max:count");
    ver->add_option("--truncation", cfg.truncation, "Orbit truncation K");
    ver->add_option("--tol", cfg.tol, "Relative tolerance");
    add_out(ver, "json,csv");

    auto* tr = app.add_subcommand("transform", "Gabor / Bargmann transforms of the example signals");
    tr->add_option("--signal", cfg.signal, "gaussian, quartic, coshsinh, coshsinh-minus");
    tr->add_option("--op", cfg.op, "gabor, bargmann, residual, inverse, export");
    tr->add_option("--point", cfg.points, "x,omega (or re,im for bargmann); repeatable");
    tr->add_option("--form", cfg.form_path, "Hadamard form to invert (op inverse)");
    tr->add_option("--truncation", cfg.truncation, "Orbit truncation K for --form");
    tr->add_option("--degree", cfg.degree, "Taylor degree for the inverse");
    tr->add_option("--grid", cfg.grid, "t grid for inverse/export");
    add_out(tr, "json,csv");

    auto* je = app.add_subcommand("jensen", "Root count against the Jensen bound");
    je->add_option("--signal", cfg.signal, "gaussian, quartic, coshsinh, coshsinh-minus");
    je->add_option("--lattice", cfg.lattice, "a,b: synthetic lattice aZ + ibZ");
    je->add_option("--r", cfg.radii, "Radii, comma separated")->delimiter(',');
    add_out(je, "json");

    auto* se = app.add_subcommand("series", "Symmetric series sums");
    se->add_option("--id", cfg.series_id, "pi_identity or b_m");
    se->add_option("--m", cfg.m, "m for b_m");
    se->add_option("--K,--series-K", cfg.series_K, "Symmetric truncation K");
    add_out(se, "text,json");

    auto* ga = app.add_subcommand("gamma", "Gamma-quotient integral identity");
    ga->add_option("--lambda", cfg.lambdas, "Exponents lambda > 1, comma separated")->delimiter(',');
    add_out(ga, "json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        return run(cfg);
    } catch (const phaseret::Error& e) {
        std::cerr << cfg.command << ": " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << cfg.command << ": unexpected failure: " << e.what() << '\n';
        return kExitError;
    }
}
