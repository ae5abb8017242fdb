#include "sra/json_io.hpp"

namespace sra {

Json rational_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw errors::usage("expected a rational as \"p/q\" string or integer, got " + j.dump());
}

Json cyclo_json(const Cyclotomic& v) {
    if (v.is_rational()) return rational_json(v.rational_value());
    Json j;
    j["order"] = v.order();
    Json coeffs = Json::array();
    for (const Rational& c : v.coeffs()) coeffs.push_back(rational_json(c));
    j["coeffs"] = coeffs;
    return j;
}

Cyclotomic cyclo_from_json(const Json& j, long long expected_order) {
    if (j.is_number_integer() || j.is_string())
        return Cyclotomic(rational_from_json(j), expected_order);
    if (j.is_object() && j.contains("order") && j.contains("coeffs")) {
        long long order = j.at("order").get<long long>();
        std::vector<Rational> coeffs;
        for (const Json& c : j.at("coeffs")) coeffs.push_back(rational_from_json(c));
        Cyclotomic v = Cyclotomic::from_coeffs(order, std::move(coeffs));
        return v.promoted(expected_order);
    }
    throw errors::usage("expected a cyclotomic value ({order, coeffs} or \"p/q\"), got " + j.dump());
}

Json root_json(const RootVec& v) {
    Json j = Json::array();
    for (long long x : v) j.push_back(x);
    return j;
}

RootVec root_from_json(const Json& j) {
    if (!j.is_array()) throw errors::usage("expected an integer array for a root vector");
    RootVec v;
    for (const Json& x : j) {
        if (!x.is_number_integer()) throw errors::usage("root vector entries must be integers");
        v.push_back(x.get<long long>());
    }
    return v;
}

Json quiver_json(const Quiver& q) {
    Json j;
    Json adj = Json::array();
    for (const auto& row : q.adjacency) {
        Json r = Json::array();
        for (long long v : row) r.push_back(v);
        adj.push_back(r);
    }
    j["adjacency"] = adj;
    j["trivial_vertex"] = q.trivial_vertex;
    return j;
}

Json lambda_json(const LambdaVector& l) {
    Json arr = Json::array();
    for (const Cyclotomic& v : l.values) arr.push_back(cyclo_json(v));
    return Json{{"lambda", arr}};
}

LambdaVector lambda_from_json(const Json& j, long long ell) {
    const Json& arr = j.is_array() ? j : j.at("lambda");
    if (!arr.is_array() || static_cast<long long>(arr.size()) != ell)
        throw errors::usage("lambda must be an array of ell values");
    LambdaVector l;
    l.ell = ell;
    for (const Json& v : arr) l.values.push_back(cyclo_from_json(v, ell));
    return l;
}

Json class_param_json(const ClassParameter& c) {
    Json arr = Json::array();
    for (const Cyclotomic& v : c.values) arr.push_back(cyclo_json(v));
    return Json{{"c", arr}};
}

Json matrix_json(const CMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(cyclo_json(m.at(i, j)));
        rows.push_back(r);
    }
    return rows;
}

Json simple_json(const SimpleModule& m) {
    Json j;
    j["alpha"] = root_json(m.alpha);
    j["dim"] = m.dim;
    j["j0"] = m.j0;
    Json s = Json::array();
    for (const Cyclotomic& a : m.string) s.push_back(cyclo_json(a));
    j["string"] = s;
    j["X"] = matrix_json(m.X);
    j["Y"] = matrix_json(m.Y);
    j["G"] = matrix_json(m.G);
    return j;
}

Json hyperplane_json(const Hyperplane& h, long long ell) {
    Json j;
    j["alpha"] = root_json(h.alpha);
    j["k_coeff"] = rational_json(h.k_coeff);
    j["constant"] = cyclo_json(h.constant);
    Json cs = Json::array();
    for (const Cyclotomic& c : h.c_coeffs) cs.push_back(cyclo_json(c));
    j["c_coeffs"] = cs;
    j["rectangle"] = Json{{"width", h.width}, {"height", h.height}};
    (void)ell;
    return j;
}

Json subspace_json(const AffineSubspace& s) {
    Json j;
    j["consistent"] = s.consistent;
    j["codimension"] = s.codimension;
    if (s.consistent) {
        Json off = Json::array();
        for (const Cyclotomic& v : s.offset) off.push_back(cyclo_json(v));
        j["offset"] = off;
        Json dirs = Json::array();
        for (const auto& d : s.directions) {
            Json dv = Json::array();
            for (const Cyclotomic& v : d) dv.push_back(cyclo_json(v));
            dirs.push_back(dv);
        }
        j["directions"] = dirs;
    }
    return j;
}

Json linear_form_json(const LinearFormKC& f) {
    Json j;
    j["constant"] = cyclo_json(f.constant);
    j["k_coeff"] = cyclo_json(f.k_coeff);
    Json cs = Json::array();
    for (const Cyclotomic& c : f.c_coeffs) cs.push_back(cyclo_json(c));
    j["c_coeffs"] = cs;
    return j;
}

Json relation_report_json(const RelationReport& r) {
    Json j;
    Json r1 = Json::array();
    for (bool b : r.r1_zero) r1.push_back(b);
    j["R1_zero"] = r1;
    Json r2 = Json::array();
    for (const auto& e : r.r2) {
        Json entry;
        entry["i"] = e.i + 1;
        entry["j"] = e.j + 1;
        entry["u"] = std::string(1, e.u);
        entry["v"] = std::string(1, e.v);
        entry["zero"] = e.zero;
        r2.push_back(entry);
    }
    j["R2_zero"] = r2;
    j["all_zero"] = r.all_zero();
    return j;
}

Json deformation_report_json(const DeformationReport& r, const CyclicGroup& g) {
    (void)g;
    Json j;
    auto basis_json = [](const std::vector<std::vector<Cyclotomic>>& basis) {
        Json arr = Json::array();
        for (const auto& v : basis) {
            Json row = Json::array();
            for (const Cyclotomic& x : v) row.push_back(cyclo_json(x));
            arr.push_back(row);
        }
        return arr;
    };
    j["tangent_kc"] = basis_json(r.tangent_kc);
    j["tangent_klambda"] = basis_json(r.tangent_klambda);
    j["codimension"] = r.codimension;
    j["solution_dim_at_zero"] = r.solution_dim_at_zero;
    j["trivial_dim"] = r.trivial_dim;
    j["unique_mod_trivial"] = r.unique_mod_trivial;
    return j;
}

Json continuation_json(const ContinuationResult& r) {
    Json j;
    j["converged"] = r.converged;
    j["residual"] = r.residual;
    j["iterations"] = r.iterations;
    j["substeps"] = r.substeps;
    if (!r.message.empty()) j["message"] = r.message;
    j["k"] = Json{{"re", r.k.real()}, {"im", r.k.imag()}};
    Json cs = Json::array();
    for (const auto& c : r.c) cs.push_back(Json{{"re", c.real()}, {"im", c.imag()}});
    j["c"] = cs;
    return j;
}

DeformJob deform_job_from_json(const Json& j) {
    if (!j.is_object()) throw errors::usage("job must be a JSON object");
    for (const char* key : {"ell", "lambda", "composition", "partitions", "roots"})
        if (!j.contains(key)) throw errors::usage(std::string("job is missing required field \"") + key + "\"");
    DeformJob job;
    if (!j.at("ell").is_number_integer()) throw errors::usage("\"ell\" must be an integer");
    job.ell = j.at("ell").get<long long>();
    if (job.ell < 2) throw errors::usage("\"ell\" must be >= 2");
    job.lambda = lambda_from_json(j.at("lambda"), job.ell);
    if (!j.at("composition").is_array() || j.at("composition").empty())
        throw errors::usage("\"composition\" must be a nonempty integer array");
    for (const Json& v : j.at("composition")) {
        if (!v.is_number_integer() || v.get<long long>() < 1)
            throw errors::usage("composition entries must be positive integers");
        job.composition.push_back(v.get<long long>());
    }
    if (!j.at("partitions").is_array() || j.at("partitions").size() != job.composition.size())
        throw errors::usage("\"partitions\" must be an array with one partition per block");
    for (const Json& p : j.at("partitions")) {
        std::vector<long long> parts;
        if (!p.is_array()) throw errors::usage("each partition must be an integer array");
        for (const Json& v : p) {
            if (!v.is_number_integer()) throw errors::usage("partition entries must be integers");
            parts.push_back(v.get<long long>());
        }
        try {
            job.partitions.emplace_back(parts);
        } catch (const Error& e) {
            throw errors::usage(std::string("invalid partition: ") + e.what());
        }
    }
    if (!j.at("roots").is_array() || j.at("roots").size() != job.composition.size())
        throw errors::usage("\"roots\" must be an array with one dimension vector per block");
    for (const Json& r : j.at("roots")) job.roots.push_back(root_from_json(r));
    if (j.contains("step")) {
        if (!j.at("step").is_number()) throw errors::usage("\"step\" must be a number");
        job.step = j.at("step").get<double>();
    }
    if (j.contains("direction")) {
        std::vector<Cyclotomic> dir;
        for (const Json& v : j.at("direction")) dir.push_back(cyclo_from_json(v, job.ell));
        if (static_cast<long long>(dir.size()) != job.ell)
            throw errors::usage("\"direction\" must have ell entries (khat, chat_1..)");
        job.direction = std::move(dir);
    }
    return job;
}

Json deform_job_json(const DeformJob& job) {
    Json j;
    j["ell"] = job.ell;
    Json lam = Json::array();
    for (const Cyclotomic& v : job.lambda.values) lam.push_back(cyclo_json(v));
    j["lambda"] = lam;
    Json comp = Json::array();
    for (long long c : job.composition) comp.push_back(c);
    j["composition"] = comp;
    Json parts = Json::array();
    for (const Partition& p : job.partitions) {
        Json pp = Json::array();
        for (long long v : p.parts) pp.push_back(v);
        parts.push_back(pp);
    }
    j["partitions"] = parts;
    Json roots = Json::array();
    for (const RootVec& r : job.roots) roots.push_back(root_json(r));
    j["roots"] = roots;
    if (job.step) j["step"] = *job.step;
    if (job.direction) {
        Json d = Json::array();
        for (const Cyclotomic& v : *job.direction) d.push_back(cyclo_json(v));
        j["direction"] = d;
    }
    return j;
}

}  // namespace sra
