#include "parnode/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <ostream>

#include "parnode/degeneration.hpp"
#include "parnode/json_io.hpp"
#include "parnode/local_model.hpp"
#include "parnode/mu_transform.hpp"
#include "parnode/semistability.hpp"
#include "parnode/verlinde.hpp"

namespace parnode {

namespace {

std::string join_semicolon(const std::vector<long long>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(values[i]);
    }
    return out;
}

const char* bool_name(bool b) { return b ? "true" : "false"; }

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

// Memo persistence opt-in via THETA_FACTOR_CACHE (a directory).
struct EngineCache {
    std::string path;

    explicit EngineCache(const VerlindeEngine& engine) {
        const char* dir = std::getenv("THETA_FACTOR_CACHE");
        if (!dir || !*dir) return;
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);  // soft failure: cold cache
        path = std::string(dir) + "/dim-cache-r" + std::to_string(engine.rank()) +
               "-k" + std::to_string(engine.level()) + ".txt";
    }

    void load(VerlindeEngine& engine) const {
        if (!path.empty()) engine.load_cache_file(path);
    }
    void save(const VerlindeEngine& engine) const {
        if (!path.empty()) engine.save_cache_file(path);
    }
};

int run_check(const RunConfig& cfg, std::ostream& out) {
    const DegenerationSpec spec = load_spec(cfg.input_path, /*enforce_balance=*/false);
    const BalanceResult balance = balance_check(spec);
    const auto ell = split_levels(spec);
    if (cfg.output_format == "csv") {
        out << "balanced,lhs,rhs\n"
            << bool_name(balance.balanced) << "," << balance.lhs.str() << ","
            << balance.rhs.str() << "\n";
    } else {
        Json j;
        j["subcommand"] = "check";
        j["balanced"] = balance.balanced;
        j["lhs"] = balance.lhs.str();
        j["rhs"] = balance.rhs.str();
        j["ell1"] = ell.first;
        j["ell2"] = ell.second;
        // component levels are only defined once the balance identity holds
        j["n1"] = nullptr;
        j["n2"] = nullptr;
        if (balance.balanced) {
            const auto levels = component_levels(spec);
            j["n1"] = to_fraction_string(levels.first);
            j["n2"] = to_fraction_string(levels.second);
        }
        emit_json(out, j);
    }
    return balance.balanced ? 0 : 1;
}

int run_certify(const RunConfig& cfg, std::ostream& out) {
    const CertifyInput input = load_certify_input(cfg.input_path);
    const CertifyOutcome outcome =
        certify(input.profiles, input.ambient, input.spec, input.ambient_dim_q);
    bool any_unstable = false;
    for (const auto& entry : outcome.entries)
        if (entry.verdict.cls == StabilityClass::Unstable) any_unstable = true;
    if (cfg.output_format == "csv") {
        out << "label,class,margin\n";
        for (const auto& entry : outcome.entries)
            out << entry.label << "," << stability_class_name(entry.verdict.cls) << ","
                << to_fraction_string(entry.verdict.margin) << "\n";
    } else {
        Json j;
        j["subcommand"] = "certify";
        j["mode"] = input.ambient_dim_q ? "generalized" : "parabolic";
        j["entries"] = Json::array();
        for (const auto& entry : outcome.entries) {
            Json e;
            e["label"] = entry.label;
            e["class"] = stability_class_name(entry.verdict.cls);
            e["margin"] = to_fraction_string(entry.verdict.margin);
            j["entries"].push_back(std::move(e));
        }
        const auto& worst = outcome.entries[outcome.min_index];
        j["min_margin"] = {{"index", outcome.min_index},
                           {"label", worst.label},
                           {"class", stability_class_name(worst.verdict.cls)},
                           {"margin", to_fraction_string(worst.verdict.margin)}};
        emit_json(out, j);
    }
    return any_unstable ? 1 : 0;
}

int run_components(const RunConfig& cfg, std::ostream& out) {
    const DegenerationSpec spec = load_spec(cfg.input_path);
    const ComponentWindow window = chi_window(spec);
    const bool generic = generic_polarization(spec) == Genericity::Generic;
    if (cfg.output_format == "csv") {
        out << "chi1,chi2\n";
        for (const auto& [chi1, chi2] : window.pairs)
            out << chi1 << "," << chi2 << "\n";
    } else {
        Json j;
        j["subcommand"] = "components";
        j["n1"] = to_fraction_string(window.n1);
        j["n2"] = to_fraction_string(window.n2);
        j["count"] = window.pairs.size();
        j["generic"] = generic;
        // the empty non-locally-free locus is asserted only under genericity
        j["w0_empty"] = generic ? Json(true) : Json(nullptr);
        j["pairs"] = Json::array();
        for (const auto& [chi1, chi2] : window.pairs)
            j["pairs"].push_back(Json::array({chi1, chi2}));
        emit_json(out, j);
    }
    return 0;
}

int run_mu_enum(const RunConfig& cfg, std::ostream& out) {
    const DegenerationSpec spec = load_spec(cfg.input_path);
    const auto labels = enumerate_mu(spec.r, spec.k);
    if (cfg.output_format == "csv") {
        out << "mu\n";
        for (const auto& mu : labels) out << join_semicolon(mu) << "\n";
    } else {
        Json j;
        j["subcommand"] = "mu-enum";
        j["r"] = spec.r;
        j["k"] = spec.k;
        j["count"] = labels.size();
        j["labels"] = Json::array();
        for (const auto& mu : labels) j["labels"].push_back(mu);
        emit_json(out, j);
    }
    return 0;
}

int run_dim(const RunConfig& cfg, std::ostream& out) {
    const DimQuery query = load_dim_query(cfg.input_path);
    VerlindeEngine engine(query.r, query.k);
    const EngineCache cache(engine);
    cache.load(engine);
    const long long direct = engine.dim_direct(query.genus, query.labels, cfg.tolerance);
    const long long recursive = engine.dim_recursive(query.genus, query.labels);
    cache.save(engine);
    const bool agree = (direct == recursive);
    if (cfg.output_format == "csv") {
        out << "dim_direct,dim_recursive,agree\n"
            << direct << "," << recursive << "," << bool_name(agree) << "\n";
    } else {
        Json j;
        j["subcommand"] = "dim";
        j["genus"] = query.genus;
        j["r"] = query.r;
        j["k"] = query.k;
        j["labels"] = query.labels;
        j["dim_direct"] = direct;
        j["dim_recursive"] = recursive;
        j["agree"] = agree;
        emit_json(out, j);
    }
    return agree ? 0 : 1;
}

int run_factorize(const RunConfig& cfg, std::ostream& out) {
    const DegenerationSpec spec = load_spec(cfg.input_path);
    VerlindeEngine engine(spec.r, spec.k);
    const EngineCache cache(engine);
    cache.load(engine);
    const FactorizationReport rep =
        factorization_report(spec, engine, cfg.tolerance, cfg.workers);
    cache.save(engine);
    if (cfg.output_format == "csv") {
        out << "mu,chi1,chi2,admissible,dim_left,dim_right,product\n";
        for (const auto& row : rep.rows)
            out << join_semicolon(row.mu) << "," << to_fraction_string(row.chi1) << ","
                << to_fraction_string(row.chi2) << "," << bool_name(row.admissible)
                << "," << row.dim_left << "," << row.dim_right << "," << row.product
                << "\n";
    } else {
        Json j;
        j["subcommand"] = "factorize";
        j["r"] = rep.r;
        j["k"] = rep.k;
        j["g1"] = rep.g1;
        j["g2"] = rep.g2;
        j["lhs"] = rep.lhs;
        j["lhs_direct"] = rep.lhs_direct;
        j["oracles_agree"] = rep.oracles_agree;
        j["rows"] = Json::array();
        for (const auto& row : rep.rows) {
            Json rj;
            rj["mu"] = row.mu;
            rj["chi1"] = to_fraction_string(row.chi1);
            rj["chi2"] = to_fraction_string(row.chi2);
            rj["admissible"] = row.admissible;
            rj["label"] = row.label;
            rj["dual"] = row.dual;
            rj["dim_left"] = row.dim_left;
            rj["dim_right"] = row.dim_right;
            rj["product"] = row.product;
            j["rows"].push_back(std::move(rj));
        }
        j["rhs_mu_admissible"] = rep.rhs_mu_admissible;
        j["rhs_fusion"] = rep.rhs_fusion;
        j["equal"] = rep.equal;
        j["mu_sum_matches_fusion"] = rep.mu_sum_matches_fusion;
        emit_json(out, j);
    }
    return (rep.equal && rep.oracles_agree) ? 0 : 1;
}

int run_local_model(const RunConfig& cfg, std::ostream& out) {
    LocalModelRequest req;
    if (cfg.size || cfg.field) {
        if (!cfg.size || !cfg.field)
            fail(ErrorCode::InvariantViolation,
                 "local-model: --size and --field must be given together");
        req.n = *cfg.size;
        req.q = *cfg.field;
    } else {
        req = load_local_model_request(cfg.input_path);
    }
    const CensusResult result = census(req.n, req.q, cfg.workers);
    if (cfg.output_format == "csv") {
        out << "stratum,count\n";
        for (std::size_t s = 0; s < result.by_stratum.size(); ++s)
            out << s << "," << result.by_stratum[s] << "\n";
    } else {
        Json j;
        j["subcommand"] = "local-model";
        j["n"] = result.n;
        j["q"] = result.q;
        j["total"] = result.total;
        j["by_stratum"] = result.by_stratum;
        emit_json(out, j);
    }
    return 0;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.output_format != "json" && cfg.output_format != "csv")
            fail(ErrorCode::InvariantViolation,
                 "format: expected 'json' or 'csv', got '" + cfg.output_format + "'");
        if (cfg.tolerance <= 0)
            fail(ErrorCode::InvariantViolation, "tolerance: must be positive");
        if (cfg.workers < 1)
            fail(ErrorCode::InvariantViolation, "workers: must be at least 1");
        const bool inline_local_model =
            cfg.subcommand == "local-model" && (cfg.size || cfg.field);
        if (cfg.input_path.empty() && !inline_local_model)
            fail(ErrorCode::InvariantViolation, "input: path required");

        if (cfg.subcommand == "check") return run_check(cfg, out);
        if (cfg.subcommand == "certify") return run_certify(cfg, out);
        if (cfg.subcommand == "components") return run_components(cfg, out);
        if (cfg.subcommand == "mu-enum") return run_mu_enum(cfg, out);
        if (cfg.subcommand == "dim") return run_dim(cfg, out);
        if (cfg.subcommand == "factorize") return run_factorize(cfg, out);
        if (cfg.subcommand == "local-model") return run_local_model(cfg, out);
        fail(ErrorCode::InvariantViolation,
             "subcommand: unknown '" + cfg.subcommand + "'");
    } catch (const Error& e) {
        Json j;
        j["error"] = {{"code", error_code_name(e.code())}, {"detail", e.detail()}};
        emit_json(out, j);
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        Json j;
        j["error"] = {{"code", "InternalError"}, {"detail", e.what()}};
        emit_json(out, j);
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace parnode
