#include "kecalc/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

#include "kecalc/calabi.hpp"
#include "kecalc/cr3.hpp"
#include "kecalc/format.hpp"
#include "kecalc/hj.hpp"
#include "kecalc/hypersurface.hpp"
#include "kecalc/json_writer.hpp"
#include "kecalc/ma_radial.hpp"

namespace kecalc::cli {

namespace {

std::vector<long long> parse_longs(const std::string& text, const char* what) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            long long v = std::stoll(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw validation_error("UsageError",
                                   std::string(what) + ": expected comma-separated integers, got '" + text + "'");
        }
    }
    return out;
}

int_matrix parse_matrix(const std::string& text) {
    int_matrix m;
    std::stringstream ss(text);
    std::string row;
    std::vector<std::vector<long long>> rows;
    while (std::getline(ss, row, ';')) rows.push_back(parse_longs(row, "--matrix"));
    m.size = static_cast<int>(rows.size());
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != m.size)
            throw validation_error("NonSquare", "matrix rows must all have length " +
                                                    std::to_string(m.size));
        m.a.insert(m.a.end(), r.begin(), r.end());
    }
    return m;
}

void write_text_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw validation_error("UsageError", "cannot open '" + path + "' for writing");
    f << text;
}

jvalue stabilizers_json(const std::vector<std::pair<long long, long long>>& chain) {
    jvalue arr = jvalue::array();
    for (const auto& [m, n] : chain) {
        jvalue pair = jvalue::array();
        pair.push(m).push(n);
        arr.push(std::move(pair));
    }
    return arr;
}

jvalue longs_json(const std::vector<long long>& v) {
    jvalue arr = jvalue::array();
    for (long long x : v) arr.push(x);
    return arr;
}

struct command_output {
    jvalue payload = jvalue::object();
    std::vector<std::string> diagnostics;
    std::string human;
};

void emit(const command_output& res, bool json, std::ostream& out) {
    if (json) {
        jvalue doc = res.payload;
        if (!res.diagnostics.empty()) {
            jvalue d = jvalue::array();
            for (const auto& s : res.diagnostics) d.push(s);
            doc.set("diagnostics", std::move(d));
        }
        out << doc.dump() << "\n";
    } else {
        out << res.human;
        for (const auto& s : res.diagnostics) out << "warning: " << s << "\n";
    }
}

// ---- hj ----

struct hj_args {
    long long p = 0, q = 0;
    std::string entries_text;
    std::string matrix_text;
    bool json = false;
};

command_output run_hj(const hj_args& a) {
    command_output res;
    std::ostringstream hs;
    int modes = (!a.matrix_text.empty() ? 1 : 0) + (!a.entries_text.empty() ? 1 : 0) +
                (a.p != 0 || a.q != 0 ? 1 : 0);
    if (modes > 1)
        throw validation_error("UsageError", "--p/--q, --entries and --matrix are mutually exclusive");
    if (!a.matrix_text.empty()) {
        int_matrix m = parse_matrix(a.matrix_text);
        bool nd = is_negative_definite(m);
        res.payload.set("negative_definite", nd).set("size", static_cast<long long>(m.size));
        hs << "matrix " << m.size << "x" << m.size << " negative definite: " << (nd ? "yes" : "no") << "\n";
        res.human = hs.str();
        return res;
    }
    if (!a.entries_text.empty()) {
        std::vector<long long> entries = parse_longs(a.entries_text, "--entries");
        quotient_data d = hj_evaluate(entries);
        res.payload.set("entries", longs_json(entries))
            .set("p", d.p)
            .set("q", d.q)
            .set("admissible", ke_admissible(entries));
        hs << "p/q = " << d.p << "/" << d.q << "\n";
        res.human = hs.str();
        return res;
    }
    hj_string s = hj_expand(quotient_data{a.p, a.q});
    res.payload.set("p", s.source.p)
        .set("q", s.source.q)
        .set("entries", longs_json(s.entries))
        .set("admissible", ke_admissible(s.entries))
        .set("stabilizers", stabilizers_json(s.stabilizers))
        .set("negative_definite", is_negative_definite(s.intersection));
    hs << "(p, q) = (" << s.source.p << ", " << s.source.q << ")\nentries:";
    for (long long e : s.entries) hs << " " << e;
    hs << "\nstabilizers:";
    for (const auto& [m, n] : s.stabilizers) hs << " (" << m << "," << n << ")";
    hs << "\nadmissible (all entries >= 3): " << (ke_admissible(s.entries) ? "yes" : "no") << "\n";
    res.human = hs.str();
    return res;
}

// ---- calabi ----

struct calabi_args {
    int n = 0, k = 0;
    std::string lambda_text, c_text, eval_text, csv_path;
    double tau0 = std::numeric_limits<double>::quiet_NaN();
    int grid = 128;
    bool force = false;
    bool json = false;
};

command_output run_calabi(const calabi_args& a, std::ostream& out) {
    command_output res;
    einstein_profile prof;
    if (!a.lambda_text.empty() || !a.c_text.empty()) {
        if (a.lambda_text.empty() || a.c_text.empty())
            throw validation_error("UsageError", "--lambda and --c must be given together");
        prof = solve_profile(a.n, a.k, rational::parse(a.lambda_text), rational::parse(a.c_text));
    } else {
        prof = canonical_profile(a.n, a.k, a.force);
        if (a.force && a.k <= a.n)
            res.diagnostics.push_back("inadmissible order k <= n; profile computed on request");
    }

    res.payload.set("n", static_cast<long long>(prof.n))
        .set("k", static_cast<long long>(prof.k))
        .set("lambda", prof.lambda.str())
        .set("C", prof.integration_constant.str())
        .set("phi", prof.phi.str())
        .set("identity", check_einstein_identity(prof));

    if (!a.eval_text.empty()) {
        rational at = rational::parse(a.eval_text);
        res.payload.set("phi_at", prof.phi.eval_exact(at).str());
    }

    double s_star = positive_root(prof);
    double tau0 = std::isnan(a.tau0) ? (s_star + 0.5) - 1.0 : a.tau0;
    profile_diagnostics diag = completeness_report(prof, tau0);
    res.payload.set("tau_star", diag.tau_star)
        .set("tau0", tau0)
        .set("c", diag.t_upper)
        .set("disc_radius", diag.disc_radius)
        .set("beta", diag.fitted_rate)
        .set("arclength_divergent", diag.arclength_divergent);
    if (std::isinf(diag.t_upper))
        res.diagnostics.push_back("lambda <= 0: the t-range is infinite (cone-like end)");

    if (!a.csv_path.empty())
        write_text_output(a.csv_path, profile_csv(profile_table(prof, tau0, a.grid)), out);

    std::ostringstream hs;
    hs << "profile n = " << prof.n << ", k = " << prof.k << ", lambda = " << prof.lambda.str()
       << ", C = " << prof.integration_constant.str() << "\n"
       << "phi(s) = " << prof.phi.str() << "\n"
       << "einstein identity: " << (check_einstein_identity(prof) ? "exact" : "VIOLATED") << "\n"
       << "tau_* = " << format_sig12(diag.tau_star) << ", c = " << format_sig12(diag.t_upper)
       << ", disc radius = " << format_sig12(diag.disc_radius) << "\n"
       << "fitted decay rate beta = " << format_sig12(diag.fitted_rate)
       << ", arclength divergent: " << (diag.arclength_divergent ? "yes" : "no") << "\n";
    res.human = hs.str();
    return res;
}

// ---- ma ----

struct ma_args {
    int n = 0, grid = 0;
    double eps = 0, tol = 0;
    int manufacture = 0;
    double amplitude = 0.3;
    double fconst = std::numeric_limits<double>::quiet_NaN();
    double flinear = std::numeric_limits<double>::quiet_NaN();
    int max_iter = 30;
    bool fit = false;
    std::string csv_path;
    bool json = false;
};

command_output run_ma(const ma_args& a, std::ostream& out) {
    command_output res;
    radial_problem prob;
    std::string mode;
    int modes = (!std::isnan(a.fconst) ? 1 : 0) + (!std::isnan(a.flinear) ? 1 : 0) +
                (a.manufacture > 0 ? 1 : 0);
    if (modes > 1)
        throw validation_error("UsageError",
                               "--manufacture, --fconst and --flinear are mutually exclusive");
    if (!std::isnan(a.fconst)) {
        prob = source_problem(a.n, a.eps, a.grid, [&](double) { return a.fconst; });
        mode = "constant-source";
    } else if (!std::isnan(a.flinear)) {
        prob = source_problem(a.n, a.eps, a.grid, [&](double r) { return a.flinear * (1.0 - r); });
        mode = "linear-source";
    } else if (a.manufacture > 0) {
        prob = manufactured_problem(a.n, a.eps, a.grid, a.manufacture, a.amplitude);
        mode = "manufactured";
    } else {
        prob = hyperbolic_test_problem(a.n, a.eps, a.grid);
        mode = "hyperbolic";
    }

    std::vector<iteration_record> trace;
    radial_solution sol = newton_solve(prob, a.tol, a.max_iter, a.csv_path.empty() ? nullptr : &trace);

    res.payload.set("mode", mode)
        .set("n", static_cast<long long>(a.n))
        .set("grid", static_cast<long long>(a.grid))
        .set("eps", a.eps)
        .set("iterations", static_cast<long long>(sol.iterations))
        .set("residual_sup", sol.residual_sup)
        .set("converged", sol.converged);
    if (!prob.u_exact.empty())
        res.payload.set("sup_error", sup_diff(sol.u, prob.u_exact));
    if (a.fit)
        res.payload.set("fitted_order", asymptotic_order_fit(sol, prob));

    if (!a.csv_path.empty())
        write_text_output(a.csv_path, radial_csv(prob, trace), out);

    std::ostringstream hs;
    hs << mode << " problem, n = " << a.n << ", N = " << a.grid << ", eps = " << a.eps << "\n"
       << "converged in " << sol.iterations << " iterations, residual sup = "
       << format_sig12(sol.residual_sup) << "\n";
    if (!prob.u_exact.empty())
        hs << "sup error vs exact solution = " << format_sig12(sup_diff(sol.u, prob.u_exact)) << "\n";
    if (a.fit)
        hs << "fitted vanishing order = " << format_sig12(asymptotic_order_fit(sol, prob)) << "\n";
    res.human = hs.str();
    return res;
}

// ---- hypersurface ----

struct hs_args {
    std::string family;
    int n = 0;
    long long d = 0, k = 0;
    std::string weights_text, exponents_text;
    bool gorenstein = true;
    bool json = false;
};

command_output run_hypersurface(const hs_args& a) {
    command_output res;
    std::ostringstream hs;
    if (!a.family.empty()) {
        blowup_family fam;
        if (a.family == "ex1") fam = blowup_family::ex1;
        else if (a.family == "ex2") fam = blowup_family::ex2;
        else if (a.family == "ex3") fam = blowup_family::ex3;
        else throw validation_error("UsageError", "--family must be ex1, ex2 or ex3");
        blowup_ledger led = make_blowup_ledger(fam, a.n, a.d, a.k);
        res.payload.set("family", a.family)
            .set("n", static_cast<long long>(led.n))
            .set("d", led.d)
            .set("k", led.k)
            .set("step_weight", longs_json(led.step_weight))
            .set("steps", led.steps)
            .set("smooth_end", led.smooth_end)
            .set("per_step_coefficient", led.per_step)
            .set("discrepancies", longs_json(led.discrepancies));
        hs << a.family << " with n = " << led.n << ", d = " << led.d << ", k = " << led.k << "\n"
           << "steps: " << led.steps << ", smooth end: " << (led.smooth_end ? "yes" : "no") << "\n"
           << "discrepancies:";
        for (long long v : led.discrepancies) hs << " " << v;
        hs << "\n";
        res.human = hs.str();
        return res;
    }

    std::vector<long long> weights = parse_longs(a.weights_text, "--weights");
    std::vector<std::vector<long long>> monomials;
    std::stringstream ss(a.exponents_text);
    std::string mono;
    while (std::getline(ss, mono, ';'))
        monomials.push_back(parse_longs(mono, "--exponents"));
    long long deg = weighted_degree(monomials, weights);
    long long sumw = 0;
    for (long long w : weights) sumw += w;
    obstruction verdict = ke_obstruction(weights, deg, a.gorenstein);
    res.payload.set("weights", longs_json(weights))
        .set("sum_weights", sumw)
        .set("degree", deg)
        .set("se_property", se_property(weights, deg))
        .set("adjunction_coefficient", adjunction_coefficient(weights, deg))
        .set("gorenstein", a.gorenstein)
        .set("verdict", to_string(verdict))
        .set("note", "isolated singularity assumed, not verified");
    hs << "weights (" << a.weights_text << "), weighted degree " << deg << ", |w| = " << sumw << "\n"
       << "property S-E: " << (se_property(weights, deg) ? "yes" : "no") << "\n"
       << "verdict: " << to_string(verdict) << " (isolated singularity assumed)\n";
    res.human = hs.str();
    return res;
}

// ---- classify ----

jvalue verdict_json(const verdict& v) {
    jvalue doc = jvalue::object();
    doc.set("answer", to_string(v.result));
    jvalue reasons = jvalue::array();
    for (const auto& r : v.reasons) reasons.push(r);
    doc.set("reasons", std::move(reasons));
    jvalue fibers = jvalue::array();
    for (const auto& f : v.per_fiber) {
        jvalue fj = jvalue::object();
        fj.set("m", f.m).set("q", f.q).set("entries", longs_json(f.entries)).set("admissible", f.admissible);
        fibers.push(std::move(fj));
    }
    doc.set("per_fiber", std::move(fibers));
    return doc;
}

command_output classify_output(const verdict& v) {
    command_output res;
    res.payload = verdict_json(v);
    std::ostringstream hs;
    hs << "answer: " << to_string(v.result) << "\n";
    for (const auto& r : v.reasons) hs << "  - " << r << "\n";
    res.human = hs.str();
    return res;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kahler-Einstein calculus for resolutions of cone singularities"};
    app.require_subcommand(1);

    hj_args hja;
    auto* hj = app.add_subcommand("hj", "Hirzebruch-Jung resolution of a cyclic quotient (p; q)");
    hj->add_option("--p", hja.p, "order p");
    hj->add_option("--q", hja.q, "twist q");
    hj->add_option("--entries", hja.entries_text, "evaluate a continued fraction e1,e2,...");
    hj->add_option("--matrix", hja.matrix_text, "test a symmetric integer matrix 'a,b;c,d' for negative definiteness");
    hj->add_flag("--json", hja.json, "machine-readable output");

    calabi_args caa;
    auto* calabi = app.add_subcommand("calabi", "cohomogeneity-one Einstein momentum profile");
    calabi->add_option("--n", caa.n, "complex dimension")->required();
    calabi->add_option("--k", caa.k, "quotient order / bundle power")->required();
    calabi->add_option("--lambda", caa.lambda_text, "Einstein constant NUM/DEN (with --c)");
    calabi->add_option("--c", caa.c_text, "integration constant NUM/DEN (with --lambda)");
    calabi->add_option("--tau0", caa.tau0, "base point of the momentum integrals");
    calabi->add_option("--grid", caa.grid, "CSV grid size");
    calabi->add_option("--csv", caa.csv_path, "write the profile table to this path ('-' = stdout)");
    calabi->add_option("--eval", caa.eval_text, "exact evaluation of phi at a rational s");
    calabi->add_flag("--force", caa.force, "compute even when k <= n");
    calabi->add_flag("--json", caa.json, "machine-readable output");

    ma_args maa;
    auto* ma = app.add_subcommand("ma", "radial Monge-Ampere Newton solver on the unit ball");
    ma->add_option("--n", maa.n, "complex dimension")->required();
    ma->add_option("--grid", maa.grid, "number of grid intervals N")->required();
    ma->add_option("--eps", maa.eps, "outer cutoff: rho_N = 1 - eps")->required();
    ma->add_option("--tol", maa.tol, "residual sup-norm tolerance")->required();
    ma->add_option("--manufacture", maa.manufacture, "manufactured solution (1-rho)^ORDER");
    ma->add_option("--amplitude", maa.amplitude, "manufactured solution amplitude");
    ma->add_option("--fconst", maa.fconst, "constant source F = DELTA, zero boundary");
    ma->add_option("--flinear", maa.flinear, "linear source F = S (1 - rho), zero boundary");
    ma->add_option("--max-iter", maa.max_iter, "iteration budget");
    ma->add_flag("--fit", maa.fit, "fit the boundary vanishing order of u");
    ma->add_option("--csv", maa.csv_path, "write the per-iteration table to this path ('-' = stdout)");
    ma->add_flag("--json", maa.json, "machine-readable output");

    hs_args hsa;
    auto* hyp = app.add_subcommand("hypersurface", "weighted homogeneous hypersurface ledgers");
    hyp->add_option("--family", hsa.family, "ex1, ex2 or ex3");
    hyp->add_option("--n", hsa.n, "ambient dimension parameter n");
    hyp->add_option("--d", hsa.d, "base degree d");
    hyp->add_option("--k", hsa.k, "last exponent k");
    hyp->add_option("--weights", hsa.weights_text, "weights w0,..,wn");
    hyp->add_option("--exponents", hsa.exponents_text, "monomial exponents 'a0,..,an;b0,..,bn;...'");
    hyp->add_option("--gorenstein", hsa.gorenstein, "Gorenstein flag (default true)");
    hyp->add_flag("--json", hsa.json, "machine-readable output");

    auto* cls = app.add_subcommand("classify", "dimension-3 normal boundary classification");
    cls->require_subcommand(1);
    int genus = 0;
    std::vector<std::string> fiber_texts;
    bool cls_json = false;
    auto* seif = cls->add_subcommand("seifert", "Seifert bundle over a genus >= 1 surface");
    seif->add_option("--genus", genus, "base genus")->required();
    seif->add_option("--fiber", fiber_texts, "multiple fiber M,Q (repeatable)");
    seif->add_flag("--json", cls_json, "machine-readable output");
    long long qp = 0, qq = 0;
    auto* quot = cls->add_subcommand("quotient", "cyclic quotient of the 3-sphere");
    quot->add_option("--p", qp, "order p")->required();
    quot->add_option("--q", qq, "twist q")->required();
    quot->add_flag("--json", cls_json, "machine-readable output");

    std::vector<const char*> argv;
    argv.push_back("kecalc");
    for (const auto& s : args) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "UsageError: " << e.what() << "\n"
            << "usage: kecalc (hj | calabi | ma | hypersurface | classify) [options]; see --help\n";
        return 1;
    }

    bool json = false;
    try {
        command_output res;
        if (hj->parsed()) {
            json = hja.json;
            if (hja.matrix_text.empty() && hja.entries_text.empty() && (hja.p == 0 || hja.q == 0))
                throw validation_error("UsageError", "hj needs --p and --q (or --entries / --matrix)");
            res = run_hj(hja);
        } else if (calabi->parsed()) {
            json = caa.json;
            res = run_calabi(caa, out);
        } else if (ma->parsed()) {
            json = maa.json;
            res = run_ma(maa, out);
        } else if (hyp->parsed()) {
            json = hsa.json;
            bool family_mode = !hsa.family.empty();
            bool weights_mode = !hsa.weights_text.empty();
            if (family_mode == weights_mode)
                throw validation_error("UsageError",
                                       "hypersurface needs either --family with --n/--d/--k or --weights with --exponents");
            res = run_hypersurface(hsa);
        } else if (cls->parsed()) {
            json = cls_json;
            if (seif->parsed()) {
                seifert_data sd;
                sd.genus = genus;
                for (const auto& ft : fiber_texts) {
                    auto mv = parse_longs(ft, "--fiber");
                    if (mv.size() != 2)
                        throw validation_error("UsageError", "--fiber expects M,Q");
                    sd.fibers.emplace_back(mv[0], mv[1]);
                }
                res = classify_output(classify_seifert(sd));
            } else {
                res = classify_output(classify_cyclic_quotient(qp, qq));
            }
        }
        emit(res, json, out);
        return 0;
    } catch (const validation_error& e) {
        if (json)
            out << jvalue::object().set("code", e.code()).set("error", e.what()).set("status", "error").dump()
                << "\n";
        err << e.what() << "\n";
        return 1;
    } catch (const numerical_error& e) {
        if (json)
            out << jvalue::object().set("code", e.code()).set("error", e.what()).set("status", "error").dump()
                << "\n";
        err << e.what() << "\n";
        return 2;
    }
}

} // namespace kecalc::cli
