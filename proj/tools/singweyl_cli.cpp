// Command-line front end: evaluates singular m-functions, eigenvalues,
// spectral measures, transforms, Nevanlinna reports, the uniqueness
// comparator, and the acceptance suite.
//
// Exit codes: 0 ok, 1 acceptance failure (golden), 2 configuration error,
// 3 numeric failure, 4 precondition violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "singweyl/bm.hpp"
#include "singweyl/eigenvalues.hpp"
#include "singweyl/golden.hpp"
#include "singweyl/io.hpp"
#include "singweyl/models.hpp"
#include "singweyl/nevanlinna.hpp"
#include "singweyl/spectral.hpp"
#include "singweyl/weyl.hpp"

using namespace singweyl;
using nlohmann::json;

namespace {

struct ModelContext {
    ModelPreset preset;
    Potential pot;
    SolutionSystem sys;
    MEvaluator fast_m;  // closed-form m-function when the family has one
    std::optional<LimitCircleSystem> lc;
};

ModelContext build_model(const std::string& spec, double c) {
    ModelContext ctx;
    ctx.preset = parse_model_preset(spec);
    const auto& ps = ctx.preset;
    if (ps.family == "bessel") {
        ctx.pot = bessel_potential(ps.l);
        ctx.sys = bessel_system(ps.l);
        double l = ps.l;
        ctx.fast_m = [l](Complex z) { return bessel_M(l, z); };
    } else if (ps.family == "bessel+coulomb") {
        ctx.pot = coulomb_bessel(ps.l, ps.q1);
        ctx.sys = system_from_potential(ctx.pot, c);
    } else if (ps.family == "soliton") {
        SolitonModel m{ps.A, ps.v1};
        ctx.pot = soliton_potential(m);
        ctx.sys = soliton_system(m);
        ctx.fast_m = [m](Complex z) { return soliton_M(m, z); };
    } else {  // limitcircle
        ctx.pot = bessel_potential(ps.l);
        ctx.lc = limit_circle_system(ctx.pot, 1.0, c);
        ctx.sys = ctx.lc->system;
    }
    return ctx;
}

double parse_angle(const std::string& s) {
    // accepts plain numbers and pi fractions like pi, pi/2, 2pi/3
    auto ppos = s.find("pi");
    if (ppos == std::string::npos) return std::stod(s);
    double num = 1.0, den = 1.0;
    std::string pre = s.substr(0, ppos), post = s.substr(ppos + 2);
    if (!pre.empty()) num = std::stod(pre);
    if (!post.empty()) {
        if (post[0] != '/') throw precondition_error("bad angle '" + s + "'");
        den = std::stod(post.substr(1));
    }
    return num * pi / den;
}

std::vector<Complex> parse_zgrid(const std::string& spec) {
    std::vector<Complex> out;
    if (spec.rfind("ray:", 0) == 0) {
        std::string rest = spec.substr(4);
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            auto comma = rest.find(',', pos);
            parts.push_back(rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (parts.size() != 4) throw precondition_error("zgrid ray wants angle,rmin,rmax,count");
        double ang = parse_angle(parts[0]);
        double r0 = std::stod(parts[1]), r1 = std::stod(parts[2]);
        int n = std::stoi(parts[3]);
        if (n < 1 || !(r0 > 0.0) || !(r1 >= r0)) throw precondition_error("zgrid ray: bad range");
        for (int i = 0; i < n; ++i) {
            double r = (n == 1) ? r0 : r0 * std::pow(r1 / r0, double(i) / (n - 1));
            out.push_back(std::polar(r, ang));
        }
        return out;
    }
    if (spec.rfind("points:", 0) == 0) {
        std::string rest = spec.substr(7);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            auto semi = rest.find(';', pos);
            std::string item = rest.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
            auto colon = item.find(':');
            if (colon == std::string::npos) throw precondition_error("zgrid points want re:im pairs");
            out.push_back(Complex(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))));
            if (semi == std::string::npos) break;
            pos = semi + 1;
        }
        if (out.empty()) throw precondition_error("zgrid points: empty list");
        return out;
    }
    throw precondition_error("zgrid spec must start with ray: or points:");
}

MEvaluator measure_evaluator(const ModelContext& ctx) {
    if (ctx.fast_m) return ctx.fast_m;
    throw precondition_error(
        "model family '" + ctx.preset.family +
        "' has no closed-form m-function; boundary values near the spectrum are not computable at CLI scale");
}

void write_json(const std::string& path, const json& j) { atomic_write_text(path, j.dump(2) + "\n"); }

int cmd_mfun(const std::string& model, const std::string& zgrid, double c, const std::string& gauge,
             const std::string& out) {
    ModelContext ctx = build_model(model, c);
    if (!gauge.empty()) {
        if (gauge != "g=lambda") throw precondition_error("supported gauge: g=lambda");
        // spectral weight exp(-lambda); the entire summand f is taken as 0
        ctx.sys.gauge_g = [](Complex z) { return 0.5 * z; };
    }
    std::vector<std::vector<double>> rows;
    for (Complex z : parse_zgrid(zgrid)) {
        Complex M = ctx.lc ? lc_singular_M(*ctx.lc, z) : singular_M(ctx.sys, ctx.pot, c, z);
        if (ctx.lc && ctx.sys.gauge_g) M = std::exp(-2.0 * ctx.sys.gauge_g(z)) * M;
        rows.push_back({z.real(), z.imag(), M.real(), M.imag()});
    }
    csv_write(out, {"re_z", "im_z", "re_M", "im_M"}, rows);
    return 0;
}

int cmd_eig(const std::string& model, double c, int count, const std::string& out) {
    if (count < 1) throw precondition_error("eig: count must be positive");
    ModelContext ctx = build_model(model, c);
    auto mu = dirichlet_eigs(ctx.pot, c, count);
    auto nu = neumann_eigs(ctx.pot, c, count);
    std::vector<std::vector<double>> rows;
    for (int j = 0; j < count; ++j) rows.push_back({double(j), mu.zeros[j], nu.zeros[j]});
    csv_write(out, {"j", "mu", "nu"}, rows);
    return 0;
}

int cmd_measure(const std::string& model, const std::string& window, int points, double c,
                const std::string& out) {
    ModelContext ctx = build_model(model, c);
    auto comma = window.find(',');
    if (comma == std::string::npos) throw precondition_error("window wants lam0,lam1");
    double lam0 = std::stod(window.substr(0, comma)), lam1 = std::stod(window.substr(comma + 1));
    auto meas = stieltjes_invert(measure_evaluator(ctx), lam0, lam1, points);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < meas.grid.size(); ++i) rows.push_back({meas.grid[i], meas.density[i]});
    csv_write(out, {"lambda", "density"}, rows);
    json j;
    j["model"] = model;
    j["window"] = {lam0, lam1};
    j["atoms"] = json::array();
    for (const auto& a : meas.atoms) j["atoms"].push_back({{"lambda", a.lambda}, {"mass", a.mass}});
    j["flagged_indices"] = meas.flagged;
    std::string sidecar = out;
    if (sidecar.size() >= 4 && sidecar.compare(sidecar.size() - 4, 4, ".csv") == 0)
        sidecar.resize(sidecar.size() - 4);
    write_json(sidecar + ".json", j);
    return 0;
}

int cmd_transform(const std::string& model, const std::string& support, double lam_max, int points,
                  double c, const std::string& out) {
    ModelContext ctx = build_model(model, c);
    auto comma = support.find(',');
    if (comma == std::string::npos) throw precondition_error("support wants a,b");
    double sa = std::stod(support.substr(0, comma)), sb = std::stod(support.substr(comma + 1));
    if (!(sb > sa) || sa < 0.0) throw precondition_error("support must satisfy 0 <= a < b");
    auto meas = stieltjes_invert(measure_evaluator(ctx), 0.01, lam_max, points);
    auto f = [sa, sb](double x) { return (x >= sa && x <= sb) ? 1.0 : 0.0; };
    auto fh = transform_forward(ctx.sys, f, sa, sb, meas);
    double norm2 = norm_sq_rho(meas, fh);
    json j;
    j["model"] = model;
    j["support"] = {sa, sb};
    j["lambda_max"] = lam_max;
    j["norm_sq_rho"] = norm2;
    j["norm_sq_x"] = sb - sa;
    json samples = json::array();
    double max_dev = 0.0;
    for (int i = 1; i <= 19; ++i) {
        double x = sa + (sb - sa) * i / 20.0;
        double rec = transform_inverse(ctx.sys, meas, fh, x);
        max_dev = std::max(max_dev, std::abs(rec - 1.0));
        samples.push_back({{"x", x}, {"reconstructed", rec}});
    }
    j["max_interior_deviation"] = max_dev;
    j["samples"] = samples;
    write_json(out, j);
    return 0;
}

int cmd_nevanlinna(const std::string& model, double c, unsigned long long seed, const std::string& out) {
    ModelContext ctx = build_model(model, c);
    MEvaluator M = measure_evaluator(ctx);
    NevanlinnaReport rep;
    rep.kappa = kernel_negative_squares(M, 30, 20, seed);
    auto growth = kappa_from_growth(M);
    rep.growth_exponents = {growth.exponent};
    auto meas = stieltjes_invert(M, 0.5, 1e4, 120);
    auto mk = minimal_k(meas);
    rep.k = mk.k;
    rep.k_indeterminate = mk.indeterminate;
    for (double gamma : {0.0, 1.0})
        rep.moments_ok.push_back(moment_growth_check(meas, M, rep.k, gamma).equivalent);
    json j;
    j["model"] = model;
    j["kappa_kernel"] = rep.kappa;
    j["kappa_growth"] = growth.kappa;
    j["growth_exponent"] = growth.exponent;
    j["k_minimal"] = rep.k;
    j["k_indeterminate"] = rep.k_indeterminate;
    j["tail_exponent"] = mk.tail_exponent;
    if (ctx.preset.family == "bessel") j["k_bound"] = bessel_k_bound(ctx.preset.l);
    j["moments_ok_gamma_0_1"] = rep.moments_ok;
    j["seed"] = seed;
    write_json(out, j);
    return 0;
}

int cmd_bm(const std::string& model0, const std::string& model1, double c, double eps,
           const std::string& out) {
    ModelContext c0 = build_model(model0, c);
    ModelContext c1 = build_model(model1, c);
    auto rep = bm_compare(c0.pot, c1.pot, c0.sys, c1.sys, c, eps);
    json j;
    j["model0"] = model0;
    j["model1"] = model1;
    j["c"] = c;
    j["eps"] = eps;
    j["threshold"] = rep.threshold;
    j["verdict"] = rep.verdict;
    j["rays"] = json::array();
    for (const auto& rf : rep.rays)
        j["rays"].push_back({{"angle", rf.angle},
                             {"slope", rf.below_floor ? json(nullptr) : json(rf.slope)},
                             {"below_floor", rf.below_floor}});
    write_json(out, j);
    return 0;
}

int cmd_golden(const std::string& out) {
    auto results = run_acceptance();
    int fails = 0;
    for (const auto& r : results) {
        std::printf("%2d %-4s %-55s %s\n", r.index, r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        if (!r.pass) ++fails;
    }
    if (!out.empty()) {
        json j = json::array();
        for (const auto& r : results)
            j.push_back({{"index", r.index}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        write_json(out, j);
    }
    std::printf("%d/%zu criteria passed\n", (int)results.size() - fails, results.size());
    return fails ? 1 : 0;
}

}  // namespace

// flat key=value config file support: tokens are injected after the
// subcommand name so explicit command-line flags override them
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args;
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--config") {
            if (i + 1 >= argc) throw std::invalid_argument("--config needs a file argument");
            config_path = argv[++i];
        } else if (a.rfind("--config=", 0) == 0) {
            config_path = a.substr(9);
        } else {
            args.push_back(a);
        }
    }
    if (config_path.empty()) return args;
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot open config file " + config_path);
    std::vector<std::string> injected;
    std::string line;
    while (std::getline(in, line)) {
        auto h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        line.erase(0, line.find_first_not_of(" \t\r"));
        line.erase(line.find_last_not_of(" \t\r") + 1);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("config line without '=': " + line);
        injected.push_back("--" + line.substr(0, eq) + "=" + line.substr(eq + 1));
    }
    std::vector<std::string> out;
    std::size_t i = 0;
    for (; i < args.size(); ++i) {
        out.push_back(args[i]);
        if (!args[i].empty() && args[i][0] != '-') break;  // the subcommand token
    }
    for (auto& t : injected) out.push_back(t);
    for (++i; i < args.size(); ++i) out.push_back(args[i]);
    return out;
}

int main(int argc, char** argv) {
    CLI::App app{"singular Weyl-Titchmarsh toolkit"};
    app.require_subcommand(1);

    std::string model = "bessel:l=0", model1, zgrid = "ray:pi/2,1,1e4,40", gauge, window = "0.5,50";
    std::string support = "0,1", out;
    double c = 1.0, eps = 0.05, lam_max = 2000.0;
    int count = 10, points = 100;
    unsigned long long seed = 12345;

    auto add = [](CLI::App* sub, auto&& name, auto& var, auto&& desc) {
        return sub->add_option(name, var, desc)->take_last();
    };
    auto add_common = [&](CLI::App* sub) {
        add(sub, "--model", model, "model preset, e.g. bessel:l=1, soliton:A=1,v1=0");
        add(sub, "--c", c, "interior base point");
        add(sub, "--out", out, "output path");
    };

    auto* mfun = app.add_subcommand("mfun", "singular m-function on a z grid (CSV)");
    add_common(mfun);
    add(mfun, "--zgrid", zgrid, "ray:angle,rmin,rmax,count or points:re:im;re:im");
    add(mfun, "--gauge", gauge, "g=lambda applies the exp(-lambda) spectral rescaling");

    auto* eig = app.add_subcommand("eig", "Dirichlet/Neumann eigenvalues on (a,c) (CSV)");
    add_common(eig);
    add(eig, "--count", count, "number of eigenvalues");

    auto* measure = app.add_subcommand("measure", "spectral measure by Stieltjes inversion (CSV+JSON)");
    add_common(measure);
    add(measure, "--window", window, "lambda window lam0,lam1");
    add(measure, "--points", points, "grid points");

    auto* transform = app.add_subcommand("transform", "round trip of an indicator function (JSON)");
    add_common(transform);
    add(transform, "--support", support, "indicator support a,b");
    add(transform, "--lam-max", lam_max, "spectral cutoff");
    add(transform, "--points", points, "measure grid points");

    auto* nev = app.add_subcommand("nevanlinna", "kappa/k/growth report (JSON)");
    add_common(nev);
    add(nev, "--seed", seed, "RNG seed for kernel sampling");

    auto* bm = app.add_subcommand("bm", "two-potential uniqueness comparator (JSON)");
    add_common(bm);
    add(bm, "--model1", model1, "second model preset")->required();
    add(bm, "--eps", eps, "margin inside the agreement radius");

    auto* golden = app.add_subcommand("golden", "run the acceptance suite");
    add(golden, "--out", out, "optional JSON report path");

    app.footer("Any flag may also come from --config FILE with flat key=value lines; flags override.");

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11 consumes back to front
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config: %s\n", e.what());
        return 2;
    }

    // per-subcommand default output paths
    if (out.empty()) {
        if (mfun->parsed()) out = "mfun.csv";
        if (eig->parsed()) out = "eig.csv";
        if (measure->parsed()) out = "measure.csv";
        if (transform->parsed()) out = "transform.json";
        if (nev->parsed()) out = "nevanlinna.json";
        if (bm->parsed()) out = "bm.json";
    }

    try {
        if (mfun->parsed()) return cmd_mfun(model, zgrid, c, gauge, out);
        if (eig->parsed()) return cmd_eig(model, c, count, out);
        if (measure->parsed()) return cmd_measure(model, window, points, c, out);
        if (transform->parsed()) return cmd_transform(model, support, lam_max, points, c, out);
        if (nev->parsed()) return cmd_nevanlinna(model, c, seed, out);
        if (bm->parsed()) return cmd_bm(model, model1, c, eps, out);
        if (golden->parsed()) return cmd_golden(out);
    } catch (const precondition_error& e) {
        std::fprintf(stderr, "precondition: %s\n", e.what());
        return 4;
    } catch (const numeric_error& e) {
        std::fprintf(stderr, "numeric: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config: %s\n", e.what());
        return 2;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "config: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 2;
}
