#include "geoshield/config.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "geoshield/error.hpp"

namespace geoshield::config {

using nlohmann::json;

std::string_view boost_variant_name(detect::BoostVariant variant) {
    switch (variant) {
        case detect::BoostVariant::AlgorithmOne: return "algorithm_one";
        case detect::BoostVariant::RevisedMaxDim: return "revised_maxdim";
    }
    return "revised_maxdim";
}

void validate(const DefenseConfig& cfg) {
    const auto& t = cfg.thresholds;
    if (!(t.tau_ppl > 0.0)) throw DataError("config: tau_ppl must be positive");
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0 && std::isfinite(v); };
    if (!in_unit(t.tau_s) || !in_unit(t.tau_m)) throw DataError("config: tau_s/tau_m must be in [0,1]");
    if (!(t.tau_m > t.tau_s)) throw DataError("config: tau_m must exceed tau_s");
    if (!(t.alpha > 0.0 && t.alpha <= 1.0)) throw DataError("config: alpha must be in (0,1]");
    if (!detect::weights_valid(cfg.weights)) throw DataError("config: weights must be in [0,1] and sum to 1");
    const auto& b = cfg.boost;
    for (double theta : {b.theta_np, b.theta_ca, b.theta_tc, b.theta_np_prime, b.theta_maxdim}) {
        if (!in_unit(theta)) throw DataError("config: boost thresholds must be in [0,1]");
    }
    if (!(b.beta >= 1.0)) throw DataError("config: beta must be >= 1");
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

std::string to_canonical_json(const DefenseConfig& cfg) {
    // Hand-ordered key layout: json::dump with sorted object keys.
    json j;
    j["tau_ppl"] = fmt(cfg.thresholds.tau_ppl);
    j["tau_s"] = fmt(cfg.thresholds.tau_s);
    j["tau_m"] = fmt(cfg.thresholds.tau_m);
    j["alpha"] = fmt(cfg.thresholds.alpha);
    j["beta"] = fmt(cfg.boost.beta);
    j["weights"]["aa"] = fmt(cfg.weights.lambda_aa);
    j["weights"]["np"] = fmt(cfg.weights.lambda_np);
    j["weights"]["ca"] = fmt(cfg.weights.lambda_ca);
    j["weights"]["tc"] = fmt(cfg.weights.lambda_tc);
    j["boost"]["variant"] = std::string(boost_variant_name(cfg.boost.variant));
    j["boost"]["theta_np"] = fmt(cfg.boost.theta_np);
    j["boost"]["theta_ca"] = fmt(cfg.boost.theta_ca);
    j["boost"]["theta_tc"] = fmt(cfg.boost.theta_tc);
    j["boost"]["theta_np_prime"] = fmt(cfg.boost.theta_np_prime);
    j["boost"]["theta_maxdim"] = fmt(cfg.boost.theta_maxdim);
    j["providers"] = cfg.provider_kind == providers::ProviderKind::Reference ? "reference" : "remote";
    j["fail_fast"] = cfg.fail_fast;
    return j.dump();  // nlohmann::json objects serialize with sorted keys
}

DefenseConfig parse_config_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw DataError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw DataError("config: top level must be an object");

    DefenseConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "tau_ppl") cfg.thresholds.tau_ppl = value.get<double>();
        else if (key == "tau_s") cfg.thresholds.tau_s = value.get<double>();
        else if (key == "tau_m") cfg.thresholds.tau_m = value.get<double>();
        else if (key == "alpha") cfg.thresholds.alpha = value.get<double>();
        else if (key == "beta") cfg.boost.beta = value.get<double>();
        else if (key == "fail_fast") cfg.fail_fast = value.get<bool>();
        else if (key == "providers") {
            std::string kind = value.get<std::string>();
            if (kind == "reference") cfg.provider_kind = providers::ProviderKind::Reference;
            else if (kind == "remote") cfg.provider_kind = providers::ProviderKind::Remote;
            else throw DataError("config: unknown provider kind '" + kind + "'");
        } else if (key == "weights") {
            for (const auto& [wk, wv] : value.items()) {
                if (wk == "aa") cfg.weights.lambda_aa = wv.get<double>();
                else if (wk == "np") cfg.weights.lambda_np = wv.get<double>();
                else if (wk == "ca") cfg.weights.lambda_ca = wv.get<double>();
                else if (wk == "tc") cfg.weights.lambda_tc = wv.get<double>();
                else throw DataError("config: unknown weights key '" + wk + "'");
            }
        } else if (key == "boost") {
            for (const auto& [bk, bv] : value.items()) {
                if (bk == "variant") {
                    std::string name = bv.get<std::string>();
                    if (name == "algorithm_one") cfg.boost.variant = detect::BoostVariant::AlgorithmOne;
                    else if (name == "revised_maxdim") cfg.boost.variant = detect::BoostVariant::RevisedMaxDim;
                    else throw DataError("config: unknown boost variant '" + name + "'");
                } else if (bk == "theta_np") cfg.boost.theta_np = bv.get<double>();
                else if (bk == "theta_ca") cfg.boost.theta_ca = bv.get<double>();
                else if (bk == "theta_tc") cfg.boost.theta_tc = bv.get<double>();
                else if (bk == "theta_np_prime") cfg.boost.theta_np_prime = bv.get<double>();
                else if (bk == "theta_maxdim") cfg.boost.theta_maxdim = bv.get<double>();
                else throw DataError("config: unknown boost key '" + bk + "'");
            }
        } else {
            throw DataError("config: unknown key '" + key + "'");
        }
    }
    validate(cfg);
    return cfg;
}

DefenseConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_json(buf.str());
}

std::string config_hash(const DefenseConfig& cfg) {
    std::string canon = to_canonical_json(cfg);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace geoshield::config
