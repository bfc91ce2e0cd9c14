// Command-line driver: JSON in, one ordered JSON report out, exit codes
//   0  the tested property holds / the instance is feasible
//   1  it fails, with a certificate in the report
//   2  the engine could not decide at the configured budget
//  64  usage or input errors (bad flags, malformed JSON, schema violations)
// Reports are byte-identical for a fixed (input, seed, configuration);
// wall-clock timings only appear behind --timing.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "acceptance_lib.hpp"
#include "dicke/json_io.hpp"

namespace {

using namespace dicke;

constexpr const char* kVersion = "1.0.0";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) {
        throw std::invalid_argument("cannot open input file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Optional NumericContext overrides from the file named by
/// DICKE_NUMERIC_CONTEXT; command-line flags still win over the file.
void apply_context_file(num::NumericContext& ctx) {
    const char* path = std::getenv("DICKE_NUMERIC_CONTEXT");
    if (path == nullptr || *path == '\0') return;
    nlohmann::json j = nlohmann::json::parse(read_file(path));
    if (j.contains("eps_psd")) ctx.eps_psd = j.at("eps_psd").get<double>();
    if (j.contains("eps_feas")) ctx.eps_feas = j.at("eps_feas").get<double>();
    if (j.contains("eps_lp")) ctx.eps_lp = j.at("eps_lp").get<double>();
    if (j.contains("eps_coeff")) ctx.eps_coeff = j.at("eps_coeff").get<double>();
    if (j.contains("max_iter")) ctx.max_iter = j.at("max_iter").get<int>();
    if (j.contains("restarts")) ctx.restarts = j.at("restarts").get<int>();
    if (j.contains("grid_depth")) ctx.grid_depth = j.at("grid_depth").get<int>();
    if (j.contains("seed")) ctx.seed = j.at("seed").get<std::uint64_t>();
}

/// Accepts either a tensor document ("entries") or a state document
/// ("lambda"/"q"); states enter cone tests through their diagonal tensor.
SymTensor tensor_like(const nlohmann::json& j) {
    if (j.is_object() && j.contains("entries")) return tensor_from_json(j);
    if (j.is_object() && (j.contains("lambda") || j.contains("q"))) {
        return q_view(ds_from_json(j));
    }
    throw std::invalid_argument(
        "expected a tensor document (\"entries\") or a state document "
        "(\"lambda\" or \"q\")");
}

DsMatrix state_like(const nlohmann::json& j) {
    if (j.is_object() && (j.contains("lambda") || j.contains("q"))) {
        return ds_from_json(j);
    }
    if (j.is_object() && j.contains("entries")) {
        return lambda_from_q(tensor_from_json(j));
    }
    throw std::invalid_argument(
        "expected a state document (\"lambda\" or \"q\") or a tensor "
        "document (\"entries\")");
}

OrderedJson envelope(const std::string& command,
                     const num::NumericContext& ctx,
                     const std::string& input_bytes) {
    OrderedJson doc;
    doc["tool"] = "dicke";
    doc["version"] = kVersion;
    doc["command"] = command;
    doc["input_digest"] = digest_hex(input_bytes);
    doc["context"] = context_to_json(ctx);
    return doc;
}

struct Emit {
    bool timing = false;
    std::chrono::steady_clock::time_point start =
        std::chrono::steady_clock::now();

    int operator()(OrderedJson& doc, int code) const {
        doc["exit"] = code;
        if (timing) {
            auto stop = std::chrono::steady_clock::now();
            doc["wall_ms"] =
                std::chrono::duration<double, std::milli>(stop - start).count();
        }
        std::cout << doc.dump(2) << "\n";
        return code;
    }
};

int exit_of(ConeVerdict::Status s) {
    switch (s) {
        case ConeVerdict::Status::member: return 0;
        case ConeVerdict::Status::non_member: return 1;
        default: return 2;
    }
}

int exit_of(HierarchyVerdict::Status s) {
    switch (s) {
        case HierarchyVerdict::Status::member: return 0;
        case HierarchyVerdict::Status::non_member: return 1;
        default: return 2;
    }
}

int exit_of(SosVerdict::Status s) {
    switch (s) {
        case SosVerdict::Status::sos: return 0;
        case SosVerdict::Status::not_sos: return 1;
        default: return 2;
    }
}

struct WitnessSpec {
    std::string name;
    double a = 3.0, b = -2.5, c = 0.5;
    int family_d = 3;
    std::vector<int> alpha;
    double mu = 0.0;
    bool mu_set = false;
    std::vector<int> lifts;

    Witness build() const {
        Witness w;
        if (name == "motzkin") {
            w = motzkin();
        } else if (name == "robinson") {
            w = robinson();
        } else if (name == "choi_lam") {
            w = choi_lam(a, b, c, family_d);
        } else if (name == "projective") {
            if (alpha.empty()) {
                throw std::invalid_argument(
                    "the projective witness needs --alpha");
            }
            double dip = mu_set ? mu : critical_mu(alpha);
            w = projective_witness(alpha, dip);
        } else {
            throw std::invalid_argument("unknown witness name: " + name);
        }
        for (int var : lifts) w = lift_witness(w, var);
        return w;
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--witness,--name", name,
                        "motzkin | robinson | choi_lam | projective")
            ->required()
            ->check(CLI::IsMember(
                {"motzkin", "robinson", "choi_lam", "projective"}));
        cmd->add_option("--a", a, "choi_lam coefficient a");
        cmd->add_option("--b", b, "choi_lam coefficient b");
        cmd->add_option("--c", c, "choi_lam coefficient c");
        cmd->add_option("--dim", family_d, "choi_lam variable count");
        cmd->add_option("--alpha", alpha, "projective dip occupation")
            ->delimiter(',');
        mu_option = cmd->add_option("--mu", mu,
                                    "projective dip depth (default: critical)");
        cmd->add_option("--lift", lifts,
                        "variable indices to lift through, applied in order")
            ->delimiter(',');
    }

    void finalize() { mu_set = mu_option != nullptr && mu_option->count() > 0; }

  private:
    CLI::Option* mu_option = nullptr;
};

}  // namespace

int main(int argc, char** argv) {
    num::NumericContext ctx;
    try {
        apply_context_file(ctx);
    } catch (const std::exception& err) {
        std::cerr << "dicke: numeric context file: " << err.what() << "\n";
        return 64;
    }

    CLI::App app{"Dicke-state entanglement and symmetric-cone toolkit"};
    app.require_subcommand(1);
    bool timing = false;
    app.add_flag("--timing", timing, "append wall-clock timings to reports");
    app.add_option("--seed", ctx.seed, "deterministic solver seed");
    app.add_option("--max-iter", ctx.max_iter, "projection iteration budget");
    app.add_option("--restarts", ctx.restarts, "decomposition restarts");
    app.add_option("--grid-depth", ctx.grid_depth,
                   "simplex search refinement rounds");
    app.add_option("--eps-psd", ctx.eps_psd, "eigenvalue tolerance");
    app.add_option("--eps-feas", ctx.eps_feas, "affine feasibility tolerance");

    auto* param =
        app.add_subcommand("param", "occupation bookkeeping for a shape");
    int p_n = 2, p_d = 2;
    param->fallthrough();
    param->add_option("--n", p_n, "tensor order")->required();
    param->add_option("--d", p_d, "local dimension")->required();

    auto* ppt = app.add_subcommand(
        "ppt", "moment-matrix membership of a state at level k");
    std::string ppt_input;
    int ppt_level = -1;
    ppt->fallthrough();
    ppt->add_option("--input", ppt_input, "state JSON")->required();
    ppt->add_option("--level,-k", ppt_level,
                    "flattening order (default: floor(n/2))");

    auto* sep = app.add_subcommand(
        "sep", "separability: exact for qubits, moment + decomposition else");
    std::string sep_input;
    sep->fallthrough();
    sep->add_option("--input", sep_input, "state JSON")->required();

    auto* witness =
        app.add_subcommand("witness", "entanglement witness library");
    witness->require_subcommand(1);
    auto* wlist = witness->add_subcommand("list", "shipped witnesses");
    wlist->fallthrough();
    auto* wdetect =
        witness->add_subcommand("detect", "pair a witness with a state");
    wdetect->fallthrough();
    std::string det_state;
    WitnessSpec det_spec;
    wdetect->add_option("--state", det_state, "state JSON")->required();
    det_spec.attach(wdetect);
    auto* wexport = witness->add_subcommand("export", "emit a witness as JSON");
    wexport->fallthrough();
    WitnessSpec exp_spec;
    std::string exp_output;
    exp_spec.attach(wexport);
    wexport->add_option("--output", exp_output,
                        "also write the bare witness document here");

    auto* sos = app.add_subcommand(
        "sos", "sum-of-squares membership of an even symmetric tensor");
    std::string sos_input;
    int sos_level = -1;
    sos->fallthrough();
    sos->add_option("--input", sos_input, "tensor JSON")->required();
    sos->add_option("--structured", sos_level,
                    "structured membership at this level instead");

    auto* hierarchy = app.add_subcommand(
        "hierarchy", "one level of a membership hierarchy");
    std::string h_family, h_input;
    int h_level = 0;
    hierarchy->fallthrough();
    hierarchy->add_option("--family", h_family, "rsos | pnn | nnext | momext")
        ->required()
        ->check(CLI::IsMember({"rsos", "pnn", "nnext", "momext"}));
    hierarchy->add_option("--level,-r", h_level, "hierarchy level")->required();
    hierarchy->add_option("--input", h_input, "tensor or state JSON")
        ->required();

    auto* extend = app.add_subcommand(
        "extend", "symmetric extendibility of a state by r parties");
    std::string ext_input;
    int ext_level = 1;
    bool ext_ppt = false;
    extend->fallthrough();
    extend->add_option("--input", ext_input, "state JSON")->required();
    extend->add_option("--level,-r", ext_level, "added parties")->required();
    extend->add_flag("--ppt", ext_ppt,
                     "require the extension to pass moment matrices too");

    auto* marginal_cmd =
        app.add_subcommand("marginal", "partial trace of a state");
    std::string mar_input, mar_output;
    int mar_legs = 1;
    marginal_cmd->fallthrough();
    marginal_cmd->add_option("--input", mar_input, "state JSON")->required();
    marginal_cmd->add_option("--legs,--r", mar_legs, "legs to trace out")
        ->required();
    marginal_cmd->add_option("--output", mar_output,
                             "also write the bare marginal document here");

    auto* repro = app.add_subcommand(
        "repro", "reproduce a named construction end to end");
    std::string repro_target;
    repro->fallthrough();
    repro->add_option("target", repro_target, "currently: qutrit3")
        ->required()
        ->check(CLI::IsMember({"qutrit3"}));

    auto* selftest = app.add_subcommand(
        "selftest", "run the acceptance criteria and report per-criterion");
    selftest->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "dicke: " << e.what() << "\n";
        return 64;
    }
    det_spec.finalize();
    exp_spec.finalize();

    Emit emit;
    emit.timing = timing;
    try {
        if (param->parsed()) {
            validate_shape(p_n, p_d);
            OrderedJson doc = envelope("param", ctx, "");
            doc["n"] = p_n;
            doc["d"] = p_d;
            doc["sym_dim"] = sym_dim(p_n, p_d);
            OrderedJson occs = OrderedJson::array();
            for (const Occupation& alpha : enumerate_occupations(p_n, p_d)) {
                OrderedJson o;
                o["alpha"] = alpha;
                o["multiplicity"] = static_cast<std::uint64_t>(
                    to_double(multinomial(p_n, alpha)));
                occs.push_back(std::move(o));
            }
            doc["occupations"] = std::move(occs);
            doc["partitions"] = partitions(p_n, p_d).size();
            return emit(doc, 0);
        }

        if (ppt->parsed()) {
            std::string bytes = read_file(ppt_input);
            DsMatrix X = state_like(nlohmann::json::parse(bytes));
            int level = ppt_level >= 0 ? ppt_level : X.order() / 2;
            ConeVerdict v = is_mom(q_view(X), level, ctx.eps_psd);
            OrderedJson doc = envelope("ppt", ctx, bytes);
            doc["level"] = level;
            doc["verdict"] = verdict_to_json(v, ctx.seed);
            return emit(doc, exit_of(v.status));
        }

        if (sep->parsed()) {
            std::string bytes = read_file(sep_input);
            DsMatrix X = state_like(nlohmann::json::parse(bytes));
            SymTensor q = q_view(X);
            OrderedJson doc = envelope("sep", ctx, bytes);
            if (X.dim() == 2) {
                ConeVerdict v = qubit_separability(q, ctx.eps_psd);
                doc["method"] = "qubit_exact";
                doc["verdict"] = verdict_to_json(v, ctx.seed);
                return emit(doc, exit_of(v.status));
            }
            ConeVerdict mom = is_mom(q, X.order() / 2, ctx.eps_psd);
            doc["method"] = "moment_then_decompose";
            doc["moment"] = verdict_to_json(mom, ctx.seed);
            if (!mom.member()) {
                return emit(doc, 1);
            }
            CpResult cp = cp_decompose(q, 0, ctx.restarts, ctx.seed);
            doc["decomposition"] = cp_to_json(cp, ctx.seed);
            return emit(doc, cp.verdict.member() ? 0 : 2);
        }

        if (wlist->parsed()) {
            OrderedJson doc = envelope("witness list", ctx, "");
            OrderedJson items = OrderedJson::array();
            for (const Witness& w : {motzkin(), robinson()}) {
                OrderedJson item;
                item["name"] = w.provenance;
                item["n"] = w.tensor.order();
                item["d"] = w.tensor.dim();
                item["copositive"] = w.copositive;
                item["sos"] = w.sos.has_value() ? OrderedJson(*w.sos)
                                                : OrderedJson(nullptr);
                items.push_back(std::move(item));
            }
            doc["witnesses"] = std::move(items);
            doc["generators"] = {"choi_lam(a,b,c;dim)",
                                 "projective(alpha;mu)",
                                 "lift(witness,var)"};
            return emit(doc, 0);
        }

        if (wdetect->parsed()) {
            std::string bytes = read_file(det_state);
            DsMatrix X = state_like(nlohmann::json::parse(bytes));
            Witness w = det_spec.build();
            DetectResult det = detect(X, w, ctx.eps_psd);
            OrderedJson doc = envelope("witness detect", ctx, bytes);
            doc["witness"] = witness_to_json(w);
            doc["pairing"] = det.pairing;
            doc["entangled"] = det.entangled;
            return emit(doc, det.entangled ? 1 : 0);
        }

        if (wexport->parsed()) {
            Witness w = exp_spec.build();
            OrderedJson doc = envelope("witness export", ctx, "");
            doc["witness"] = witness_to_json(w);
            if (!exp_output.empty()) {
                std::ofstream out(exp_output);
                out << witness_to_json(w).dump(2) << "\n";
            }
            return emit(doc, 0);
        }

        if (sos->parsed()) {
            std::string bytes = read_file(sos_input);
            SymTensor T = tensor_like(nlohmann::json::parse(bytes));
            SosVerdict v = sos_level >= 0 ? structured_sos_level(T, sos_level, ctx)
                                          : is_sos_tensor(T, ctx);
            OrderedJson doc = envelope("sos", ctx, bytes);
            doc["verdict"] = verdict_to_json(v);
            return emit(doc, exit_of(v.status));
        }

        if (hierarchy->parsed()) {
            std::string bytes = read_file(h_input);
            SymTensor T = tensor_like(nlohmann::json::parse(bytes));
            HierarchyVerdict v;
            if (h_family == "rsos") {
                v = rsos_member(T, h_level, ctx);
            } else if (h_family == "pnn") {
                v = pnn_member(T, h_level);
            } else if (h_family == "nnext") {
                v = nn_ext_feasible(T, h_level, ctx);
            } else {
                v = mom_ext_feasible(T, h_level, ctx);
            }
            OrderedJson doc = envelope("hierarchy", ctx, bytes);
            doc["verdict"] = verdict_to_json(v);
            return emit(doc, exit_of(v.status));
        }

        if (extend->parsed()) {
            std::string bytes = read_file(ext_input);
            DsMatrix X = state_like(nlohmann::json::parse(bytes));
            HierarchyVerdict v = ds_extendibility(X, ext_level, ext_ppt, ctx);
            OrderedJson doc = envelope("extend", ctx, bytes);
            doc["verdict"] = verdict_to_json(v);
            return emit(doc, exit_of(v.status));
        }

        if (marginal_cmd->parsed()) {
            std::string bytes = read_file(mar_input);
            DsMatrix X = state_like(nlohmann::json::parse(bytes));
            DsMatrix Y = ds_marginal(X, mar_legs);
            OrderedJson doc = envelope("marginal", ctx, bytes);
            doc["legs"] = mar_legs;
            doc["result"] = ds_to_json(Y);
            if (!mar_output.empty()) {
                std::ofstream out(mar_output);
                out << ds_to_json(Y).dump(2) << "\n";
            }
            return emit(doc, 0);
        }

        if (repro->parsed()) {
            Qutrit3Result res = qutrit3_search();
            bool eta_ok = res.eta >= -0.03 && res.eta <= -0.015;
            bool psd_ok = res.state.is_psd(1e-12);
            bool trace_ok = std::abs(res.state.trace() - 1.0) <= 1e-9;
            bool ppt_ok = is_mom(q_view(res.state), 1, ctx.eps_psd).member();
            DetectResult det = detect(res.state, robinson(), ctx.eps_psd);
            bool detect_ok =
                det.entangled && std::abs(det.pairing - res.eta) <= 1e-9;
            OrderedJson doc = envelope("repro qutrit3", ctx, "");
            doc["p"] = res.p;
            doc["q"] = res.q;
            doc["r"] = res.r;
            doc["eta"] = res.eta;
            doc["pairing"] = det.pairing;
            OrderedJson checks;
            checks["eta_in_band"] = eta_ok;
            checks["state_psd"] = psd_ok;
            checks["unit_trace"] = trace_ok;
            checks["ppt_level_1"] = ppt_ok;
            checks["robinson_detects"] = detect_ok;
            doc["checks"] = std::move(checks);
            doc["state"] = ds_to_json(res.state);
            bool good = eta_ok && psd_ok && trace_ok && ppt_ok && detect_ok;
            return emit(doc, good ? 0 : 1);
        }

        if (selftest->parsed()) {
            auto results = acceptance::run_all();
            OrderedJson doc = envelope("selftest", ctx, "");
            OrderedJson items = OrderedJson::array();
            int failed = 0;
            for (const auto& r : results) {
                OrderedJson item;
                item["id"] = r.id;
                item["name"] = r.name;
                item["pass"] = r.pass;
                item["detail"] = r.detail;
                if (timing) item["ms"] = r.ms;
                items.push_back(std::move(item));
                if (!r.pass) ++failed;
            }
            doc["criteria"] = std::move(items);
            doc["failed"] = failed;
            return emit(doc, failed == 0 ? 0 : 1);
        }
    } catch (const nlohmann::json::parse_error& err) {
        std::cerr << "dicke: input is not valid JSON: " << err.what() << "\n";
        return 64;
    } catch (const std::invalid_argument& err) {
        std::cerr << "dicke: " << err.what() << "\n";
        return 64;
    } catch (const std::domain_error& err) {
        std::cerr << "dicke: " << err.what() << "\n";
        return 64;
    } catch (const std::exception& err) {
        std::cerr << "dicke: internal error: " << err.what() << "\n";
        return 70;
    }
    return 64;
}
