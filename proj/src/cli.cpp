#include "sra/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "sra/continuation.hpp"
#include "sra/selftest.hpp"

namespace sra::cli {

namespace {

Json error_json(const std::string& kind, const std::string& message) {
    return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

void emit(const Json& j, const std::string& output_path, std::ostream& out) {
    if (output_path.empty()) {
        out << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(output_path);
    if (!f) throw errors::usage("cannot open output path " + output_path);
    f << j.dump(2) << "\n";
}

Json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw errors::usage("cannot open job file " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    std::string text = buf.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        throw errors::usage("job file " + path + " is empty");
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw errors::usage("job file " + path + " is not valid JSON");
    return j;
}

LambdaVector lambda_from_strings(long long ell, const std::vector<std::string>& vals) {
    if (static_cast<long long>(vals.size()) != ell)
        throw errors::usage("--lambda needs exactly ell values");
    std::vector<Rational> rs;
    for (const std::string& v : vals) rs.push_back(parse_rational(v));
    return LambdaVector::from_rationals(ell, rs);
}

struct CatalogData {
    CyclicGroup group;
    InducedModule module;
    std::vector<Hyperplane> hyperplanes;
};

CatalogData build_from_job(const DeformJob& job) {
    CyclicGroup g(job.ell);
    InducedModule m = build_induced(g, job.lambda, job.composition, job.partitions, job.roots);
    std::vector<Hyperplane> hyps;
    for (std::size_t b = 0; b < job.roots.size(); ++b)
        hyps.push_back(hyperplane_for(g, job.roots[b], job.partitions[b]));
    return CatalogData{g, std::move(m), std::move(hyps)};
}

int cmd_mckay(long long ell, const std::string& output, std::ostream& out) {
    CyclicGroup g(ell);
    emit(quiver_json(mckay_quiver(g)), output, out);
    return 0;
}

int cmd_roots(long long ell, const std::vector<std::string>& lambda_strs, const std::string& output,
              std::ostream& out) {
    CyclicGroup g(ell);
    LambdaVector lam = lambda_from_strings(ell, lambda_strs);
    Quiver q = mckay_quiver(g);
    std::vector<RootVec> r = r_lambda(q, lam);
    std::vector<RootVec> sigma = sigma_lambda(q, r);
    Json j;
    j["ell"] = ell;
    j["lambda"] = lambda_json(lam)["lambda"];
    Json rr = Json::array();
    for (const RootVec& a : r) rr.push_back(root_json(a));
    j["r_lambda"] = rr;
    Json ss = Json::array();
    for (const RootVec& a : sigma) ss.push_back(root_json(a));
    j["sigma_lambda"] = ss;
    emit(j, output, out);
    return 0;
}

int cmd_simples(long long ell, const std::vector<std::string>& lambda_strs, const std::string& output,
                std::ostream& out) {
    CyclicGroup g(ell);
    LambdaVector lam = lambda_from_strings(ell, lambda_strs);
    Quiver q = mckay_quiver(g);
    std::vector<RootVec> sigma = sigma_lambda(q, r_lambda(q, lam));
    Json j;
    j["ell"] = ell;
    j["lambda"] = lambda_json(lam)["lambda"];
    Json mods = Json::array();
    for (const RootVec& a : sigma) {
        SimpleModule m = build_simple(g, lam, a);
        if (!check_relations(m, lam)) throw errors::consistency("constructed module fails its relations");
        mods.push_back(simple_json(m));
    }
    j["simples"] = mods;
    emit(j, output, out);
    return 0;
}

int cmd_hyperplanes(const std::string& job_path, const std::string& output, std::ostream& out) {
    DeformJob job = deform_job_from_json(load_json(job_path));
    CyclicGroup g(job.ell);
    Json j;
    j["ell"] = job.ell;
    Json hs = Json::array();
    std::vector<Hyperplane> hyps;
    for (std::size_t b = 0; b < job.roots.size(); ++b) {
        Hyperplane h = hyperplane_for(g, job.roots[b], job.partitions[b]);
        hs.push_back(hyperplane_json(h, job.ell));
        hyps.push_back(std::move(h));
    }
    j["hyperplanes"] = hs;
    j["intersection"] = subspace_json(intersect_hyperplanes(g, hyps));
    emit(j, output, out);
    return 0;
}

int cmd_deform(const std::string& job_path, const std::string& output, std::ostream& out) {
    DeformJob job = deform_job_from_json(load_json(job_path));
    CatalogData data = build_from_job(job);
    DeformationReport rep = first_order_deformation(data.module);
    AffineSubspace inter = intersect_hyperplanes(data.group, data.hyperplanes);
    DeformationParameter base{Cyclotomic(Rational(0), job.ell), data.module.c0()};
    Json j;
    j["job"] = deform_job_json(job);
    Json hs = Json::array();
    for (const Hyperplane& h : data.hyperplanes) hs.push_back(hyperplane_json(h, job.ell));
    j["hyperplanes"] = hs;
    j["intersection"] = subspace_json(inter);
    j["deformation"] = deformation_report_json(rep, data.group);
    j["tangent_matches_intersection"] =
        same_row_space(rep.tangent_kc, inter.directions, static_cast<std::size_t>(job.ell));
    j["relations_at_base"] = relation_report_json(check_R1_R2(data.module, base));
    emit(j, output, out);
    return 0;
}

int cmd_trace_check(const std::string& job_path, const std::string& output, std::ostream& out) {
    DeformJob job = deform_job_from_json(load_json(job_path));
    CatalogData data = build_from_job(job);
    Json j;
    j["job"] = deform_job_json(job);
    Json blocks = Json::array();
    bool all = true;
    for (int b = 0; b < static_cast<int>(job.roots.size()); ++b) {
        LinearFormKC f = trace_condition(data.module, b);
        Rational scale = trace_condition_expected_scale(data.module, b);
        LinearFormKC expected =
            hyperplane_form(data.hyperplanes[static_cast<std::size_t>(b)], job.ell)
                .scaled(Cyclotomic(scale, job.ell));
        bool match = f == expected;
        all = all && match;
        Json e;
        e["block"] = b + 1;
        e["form"] = linear_form_json(f);
        e["expected_scale"] = rational_json(scale);
        e["expected_form"] = linear_form_json(expected);
        e["matches_hyperplane_multiple"] = match;
        blocks.push_back(e);
    }
    j["blocks"] = blocks;
    j["all_match"] = all;
    emit(j, output, out);
    return 0;
}

int cmd_continue(const std::string& job_path, double tolerance, const std::string& output,
                 std::ostream& out) {
    DeformJob job = deform_job_from_json(load_json(job_path));
    CatalogData data = build_from_job(job);
    std::vector<Cyclotomic> direction;
    if (job.direction) {
        direction = *job.direction;
    } else {
        DeformationReport rep = first_order_deformation(data.module);
        if (rep.tangent_kc.empty())
            throw errors::precondition("tangent space is zero-dimensional; nothing to continue along");
        direction = rep.tangent_kc[0];
    }
    double step = job.step.value_or(0.1);
    ContinuationResult res = newton_continue(data.module, direction, step, tolerance);
    Json j;
    j["job"] = deform_job_json(job);
    Json dir = Json::array();
    for (const Cyclotomic& v : direction) dir.push_back(cyclo_json(v));
    j["direction"] = dir;
    j["step"] = step;
    j["tolerance"] = tolerance;
    j["result"] = continuation_json(res);
    emit(j, output, out);
    return res.converged ? 0 : 1;
}

int cmd_selftest(const std::string& catalog_path, std::uint64_t seed, std::ostream& out) {
    SelftestOptions opts;
    opts.seed = seed;
    if (!catalog_path.empty()) {
        Json j = load_json(catalog_path);
        if (!j.is_array() || j.empty())
            throw errors::usage("catalog file must be a nonempty JSON array of jobs");
        std::vector<DeformJob> jobs;
        for (const Json& e : j) jobs.push_back(deform_job_from_json(e));
        opts.catalog = std::move(jobs);
    }
    std::vector<SuiteResult> results = run_selftest(opts);
    bool all = true;
    for (const SuiteResult& s : results) {
        out << "suite " << s.name << ": " << (s.passed ? "PASS" : "FAIL") << "\n";
        for (const std::string& d : s.details) out << "  " << d << "\n";
        all = all && s.passed;
    }
    out << (all ? "selftest: all suites passed" : "selftest: FAILURES present") << "\n";
    return all ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact representation theory of wreath-product symplectic reflection algebras "
                 "(cyclic case)"};
    app.require_subcommand(1);

    long long ell = 2;
    std::vector<std::string> lambda_strs;
    std::string job_path, output, catalog_path;
    double tolerance = 1e-9;
    std::uint64_t seed = 12345;

    auto* mckay = app.add_subcommand("mckay", "McKay quiver of Z/ell");
    mckay->add_option("--ell", ell, "cyclic group order")->required();
    mckay->add_option("--output", output, "write JSON here instead of stdout");

    auto* roots = app.add_subcommand("roots", "R_lambda and Sigma_lambda");
    roots->add_option("--ell", ell)->required();
    roots->add_option("--lambda", lambda_strs, "ell exact rational values")->required()->expected(-1);
    roots->add_option("--output", output);

    auto* simples = app.add_subcommand("simples", "all simple modules for (ell, lambda)");
    simples->add_option("--ell", ell)->required();
    simples->add_option("--lambda", lambda_strs)->required()->expected(-1);
    simples->add_option("--output", output);

    auto* hyps = app.add_subcommand("hyperplanes", "deformation hyperplanes of a job");
    hyps->add_option("--job", job_path)->required();
    hyps->add_option("--output", output);

    auto* deform = app.add_subcommand("deform", "build + first-order solve + hyperplane comparison");
    deform->add_option("--job", job_path)->required();
    deform->add_option("--output", output);

    auto* trace = app.add_subcommand("trace-check", "trace conditions against the hyperplane forms");
    trace->add_option("--job", job_path)->required();
    trace->add_option("--output", output);

    auto* cont = app.add_subcommand("continue", "Newton continuation along a tangent direction");
    cont->add_option("--job", job_path)->required();
    cont->add_option("--tolerance", tolerance, "max relation residual");
    cont->add_option("--output", output);

    auto* self = app.add_subcommand("selftest", "run the full property-suite catalog");
    self->add_option("--catalog", catalog_path, "JSON array of jobs replacing the built-in catalog");
    self->add_option("--seed", seed, "seed for randomized property suites");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        out << error_json("usage", e.what()).dump(2) << "\n";
        return 2;
    }

    try {
        if (mckay->parsed()) return cmd_mckay(ell, output, out);
        if (roots->parsed()) return cmd_roots(ell, lambda_strs, output, out);
        if (simples->parsed()) return cmd_simples(ell, lambda_strs, output, out);
        if (hyps->parsed()) return cmd_hyperplanes(job_path, output, out);
        if (deform->parsed()) return cmd_deform(job_path, output, out);
        if (trace->parsed()) return cmd_trace_check(job_path, output, out);
        if (cont->parsed()) return cmd_continue(job_path, tolerance, output, out);
        if (self->parsed()) return cmd_selftest(catalog_path, seed, out);
        out << error_json("usage", "unknown subcommand").dump(2) << "\n";
        return 2;
    } catch (const Error& e) {
        out << error_json(e.kind(), e.what()).dump(2) << "\n";
        return e.kind() == "usage" ? 2 : 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        out << error_json("internal", e.what()).dump(2) << "\n";
        return 1;
    }
}

}  // namespace sra::cli
