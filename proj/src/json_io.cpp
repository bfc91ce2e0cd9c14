#include "dicke/json_io.hpp"

#include <cstdio>
#include <set>
#include <stdexcept>
#include <utility>

namespace dicke {

namespace {

const char* status_name(ConeVerdict::Status s) {
    switch (s) {
        case ConeVerdict::Status::member: return "member";
        case ConeVerdict::Status::non_member: return "non_member";
        default: return "inconclusive";
    }
}

const char* status_name(SosVerdict::Status s) {
    switch (s) {
        case SosVerdict::Status::sos: return "sos";
        case SosVerdict::Status::not_sos: return "not_sos";
        default: return "inconclusive";
    }
}

const char* status_name(HierarchyVerdict::Status s) {
    switch (s) {
        case HierarchyVerdict::Status::member: return "member";
        case HierarchyVerdict::Status::non_member: return "non_member";
        default: return "inconclusive";
    }
}

const char* family_name(HierarchyVerdict::Family f) {
    switch (f) {
        case HierarchyVerdict::Family::rsos: return "rsos";
        case HierarchyVerdict::Family::pnn: return "pnn";
        case HierarchyVerdict::Family::nn_ext: return "nnext";
        default: return "momext";
    }
}

OrderedJson entry_array(const std::map<Occupation, double>& values, const char* key) {
    OrderedJson arr = OrderedJson::array();
    for (const auto& [alpha, value] : values) {
        OrderedJson e;
        e[key] = alpha;
        e["value"] = value;
        arr.push_back(std::move(e));
    }
    return arr;
}

OrderedJson gram_to_json(const num::DenseSym& G) {
    OrderedJson rows = OrderedJson::array();
    for (std::size_t i = 0; i < G.size(); ++i) {
        OrderedJson row = OrderedJson::array();
        for (std::size_t j = 0; j < G.size(); ++j) row.push_back(G(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

struct EntrySpec {
    Occupation alpha;
    double value = 0.0;
};

// Looks up a mandatory key, mapping absence onto the loader's uniform
// invalid_argument contract instead of the JSON library's own exception.
const nlohmann::json& require(const nlohmann::json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw std::invalid_argument(std::string("missing required key \"") + key + "\"");
    }
    return *it;
}

std::vector<EntrySpec> parse_entries(const nlohmann::json& arr, const char* key, int n, int d) {
    if (!arr.is_array()) throw std::invalid_argument("entry payload must be an array");
    std::vector<EntrySpec> out;
    std::set<Occupation> seen;
    for (const auto& e : arr) {
        EntrySpec spec;
        spec.alpha = require(e, key).get<Occupation>();
        spec.value = require(e, "value").get<double>();
        if (static_cast<int>(spec.alpha.size()) != d || order_of(spec.alpha) != n) {
            throw std::invalid_argument("entry key does not match the declared shape (n=" +
                                        std::to_string(n) + ", d=" + std::to_string(d) + ")");
        }
        if (!seen.insert(spec.alpha).second) {
            throw std::invalid_argument("duplicate key " + format_occupation(spec.alpha));
        }
        out.push_back(std::move(spec));
    }
    return out;
}

std::pair<int, int> parse_shape(const nlohmann::json& j) {
    return {require(j, "n").get<int>(), require(j, "d").get<int>()};
}

}  // namespace

OrderedJson tensor_to_json(const SymTensor& T) {
    OrderedJson j;
    j["n"] = T.order();
    j["d"] = T.dim();
    j["entries"] = entry_array(T.values(), "alpha");
    return j;
}

OrderedJson ds_to_json(const DsMatrix& X) {
    OrderedJson j;
    j["n"] = X.order();
    j["d"] = X.dim();
    j["lambda"] = entry_array(X.lambdas(), "alpha");
    return j;
}

OrderedJson poly_to_json(const HomPoly& p) {
    OrderedJson j;
    j["d"] = p.dim();
    j["degree"] = p.degree();
    j["entries"] = entry_array(p.coeffs(), "exponent");
    return j;
}

OrderedJson witness_to_json(const Witness& w) {
    OrderedJson j = tensor_to_json(w.tensor);
    j["provenance"] = w.provenance;
    j["copositive"] = w.copositive;
    if (w.sos.has_value()) {
        j["sos"] = *w.sos;
    } else {
        j["sos"] = nullptr;
    }
    return j;
}

OrderedJson context_to_json(const num::NumericContext& ctx) {
    OrderedJson j;
    j["eps_psd"] = ctx.eps_psd;
    j["eps_feas"] = ctx.eps_feas;
    j["eps_lp"] = ctx.eps_lp;
    j["eps_coeff"] = ctx.eps_coeff;
    j["max_iter"] = ctx.max_iter;
    j["restarts"] = ctx.restarts;
    j["grid_depth"] = ctx.grid_depth;
    j["seed"] = ctx.seed;
    return j;
}

OrderedJson verdict_to_json(const ConeVerdict& v, std::uint64_t seed) {
    OrderedJson j;
    j["cone"] = v.cone;
    j["level"] = v.level;
    j["status"] = status_name(v.status);
    j["details"] = v.details;
    OrderedJson cert;
    cert["bad_alpha"] = v.bad_alpha;
    cert["bad_j"] = v.bad_j;
    cert["eigvec"] = v.eigvec;
    cert["min_value"] = v.min_value;
    j["certificate"] = std::move(cert);
    j["seed"] = seed;
    return j;
}

OrderedJson cp_to_json(const CpResult& r, std::uint64_t seed) {
    OrderedJson j;
    j["verdict"] = verdict_to_json(r.verdict, seed);
    OrderedJson factors = OrderedJson::array();
    for (const CpFactor& f : r.factors) {
        OrderedJson e;
        e["weight"] = f.weight;
        e["vec"] = f.vec;
        factors.push_back(std::move(e));
    }
    j["factors"] = std::move(factors);
    j["residual"] = r.residual;
    return j;
}

OrderedJson verdict_to_json(const SosVerdict& v) {
    OrderedJson j;
    j["status"] = status_name(v.status);
    j["level"] = v.level;
    j["details"] = v.details;
    j["basis"] = v.basis;
    OrderedJson blocks = OrderedJson::array();
    for (const GramBlock& b : v.blocks) {
        OrderedJson e;
        e["j"] = b.j;
        e["alpha"] = b.alpha;
        e["labels"] = b.labels;
        e["gram"] = gram_to_json(b.gram);
        blocks.push_back(std::move(e));
    }
    j["blocks"] = std::move(blocks);
    if (v.obstruction.has_value()) {
        OrderedJson o;
        o["monomial"] = v.obstruction->monomial;
        o["coefficient"] = v.obstruction->coefficient;
        o["half"] = v.obstruction->half;
        j["obstruction"] = std::move(o);
    } else {
        j["obstruction"] = nullptr;
    }
    if (v.pstar.has_value()) {
        OrderedJson p;
        p["a"] = v.pstar->a;
        p["b"] = v.pstar->b;
        p["c"] = v.pstar->c;
        p["t"] = v.pstar->t;
        p["value"] = v.pstar->value;
        j["pstar"] = std::move(p);
    } else {
        j["pstar"] = nullptr;
    }
    return j;
}

OrderedJson verdict_to_json(const HierarchyVerdict& v) {
    OrderedJson j;
    j["family"] = family_name(v.family);
    j["level"] = v.level;
    j["status"] = status_name(v.status);
    j["details"] = v.details;
    j["bad_monomial"] = v.bad_monomial;
    j["bad_coefficient"] = v.bad_coefficient;
    if (v.extension.has_value()) {
        j["extension"] = tensor_to_json(*v.extension);
    } else {
        j["extension"] = nullptr;
    }
    j["dual_ray"] = v.dual_ray;
    if (v.sos.has_value()) {
        j["sos"] = verdict_to_json(*v.sos);
    } else {
        j["sos"] = nullptr;
    }
    return j;
}

SymTensor tensor_from_json(const nlohmann::json& j) {
    auto [n, d] = parse_shape(j);
    SymTensor T(n, d);
    for (const EntrySpec& e : parse_entries(require(j, "entries"), "alpha", n, d)) {
        T.set(e.alpha, e.value);
    }
    return T;
}

DsMatrix ds_from_json(const nlohmann::json& j) {
    auto [n, d] = parse_shape(j);
    bool has_lambda = j.contains("lambda"), has_q = j.contains("q");
    if (has_lambda == has_q) {
        throw std::invalid_argument("state payload needs exactly one of \"lambda\" or \"q\"");
    }
    if (has_lambda) {
        DsMatrix X(n, d);
        for (const EntrySpec& e : parse_entries(require(j, "lambda"), "alpha", n, d)) {
            X.set_lambda(e.alpha, e.value);
        }
        return X;
    }
    SymTensor Q(n, d);
    for (const EntrySpec& e : parse_entries(require(j, "q"), "alpha", n, d)) {
        Q.set(e.alpha, e.value);
    }
    return lambda_from_q(Q);
}

HomPoly poly_from_json(const nlohmann::json& j) {
    int d = require(j, "d").get<int>();
    int deg = require(j, "degree").get<int>();
    HomPoly p(d, deg);
    for (const EntrySpec& e : parse_entries(require(j, "entries"), "exponent", deg, d)) {
        p.set_coeff(e.alpha, e.value);
    }
    return p;
}

std::string digest_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace dicke
