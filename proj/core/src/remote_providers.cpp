#include "geoshield/remote_providers.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "geoshield/error.hpp"
#include "geoshield/reference_providers.hpp"

namespace geoshield::remote {

using nlohmann::json;

std::optional<Endpoint> endpoint_from_env(const char* endpoint_var, const char* token_var) {
    const char* url = std::getenv(endpoint_var);
    if (url == nullptr || *url == '\0') return std::nullopt;
    Endpoint ep;
    ep.url = url;
    if (const char* token = std::getenv(token_var); token != nullptr && *token != '\0') {
        ep.token = token;
    }
    return ep;
}

namespace {

double clamp01(double v) {
    if (!std::isfinite(v)) throw ProviderError("remote: non-finite score in response");
    return std::min(1.0, std::max(0.0, v));
}

json parse_json_or_throw(const std::string& body, const char* what) {
    try {
        return json::parse(body);
    } catch (const json::exception& e) {
        throw ProviderError(std::string("remote: malformed ") + what + " response: " + e.what());
    }
}

}  // namespace

std::string judge_request_body(std::string_view text) {
    // The dimension definitions ride along so any judge endpoint scores
    // the same four axes; the reply must carry them as numeric fields.
    json j;
    j["task"] = "score_dimensions";
    j["temperature"] = 0.0;
    j["text"] = std::string(text);
    j["dimensions"]["aa"] = "authority attribution: certifications, endorsements, expert claims";
    j["dimensions"]["np"] = "narrative purposiveness: conclusion-steering reasoning or reviews";
    j["dimensions"]["ca"] = "comparative claims: explicit superiority over alternatives";
    j["dimensions"]["tc"] = "temporal claims: urgency, recency, or scarcity pressure";
    return j.dump();
}

providers::DimScores parse_judge_response(const std::string& body) {
    json j = parse_json_or_throw(body, "judge");
    providers::DimScores dims;
    for (const char* key : {"aa", "np", "ca", "tc"}) {
        if (!j.contains(key) || !j[key].is_number()) {
            throw ProviderError(std::string("remote: judge response missing numeric '") + key +
                                "'");
        }
    }
    dims.aa = clamp01(j["aa"].get<double>());
    dims.np = clamp01(j["np"].get<double>());
    dims.ca = clamp01(j["ca"].get<double>());
    dims.tc = clamp01(j["tc"].get<double>());
    return dims;
}

std::string perplexity_request_body(std::string_view text) {
    json j;
    j["task"] = "perplexity";
    j["text"] = std::string(text);
    return j.dump();
}

double parse_perplexity_response(const std::string& body) {
    json j = parse_json_or_throw(body, "perplexity");
    if (!j.contains("perplexity") || !j["perplexity"].is_number()) {
        throw ProviderError("remote: perplexity response missing numeric 'perplexity'");
    }
    double ppl = j["perplexity"].get<double>();
    if (!std::isfinite(ppl) || ppl < 1.0) {
        throw ProviderError("remote: perplexity out of range");
    }
    return ppl;
}

std::string embed_request_body(std::string_view text) {
    json j;
    j["task"] = "embed";
    j["text"] = std::string(text);
    return j.dump();
}

providers::UnitVector parse_embed_response(const std::string& body) {
    json j = parse_json_or_throw(body, "embed");
    if (!j.contains("embedding") || !j["embedding"].is_array() || j["embedding"].empty()) {
        throw ProviderError("remote: embed response missing 'embedding' array");
    }
    providers::UnitVector v;
    double norm_sq = 0.0;
    for (const auto& c : j["embedding"]) {
        if (!c.is_number()) throw ProviderError("remote: non-numeric embedding component");
        double value = c.get<double>();
        v.components.push_back(value);
        norm_sq += value * value;
    }
    double norm = std::sqrt(norm_sq);
    if (norm <= 0.0 || !std::isfinite(norm)) {
        throw ProviderError("remote: embedding has zero or non-finite norm");
    }
    for (double& c : v.components) c /= norm;
    return v;
}

std::string rank_request_body(std::string_view query,
                              const std::vector<std::string>& descriptions) {
    json j;
    j["task"] = "rank";
    j["query"] = std::string(query);
    j["candidates"] = descriptions;
    return j.dump();
}

std::vector<std::size_t> parse_rank_response(const std::string& body, std::size_t n) {
    json j = parse_json_or_throw(body, "rank");
    if (!j.contains("order") || !j["order"].is_array() || j["order"].size() != n) {
        throw ProviderError("remote: rank response must carry an 'order' array of size n");
    }
    std::vector<std::size_t> order;
    std::vector<bool> seen(n, false);
    for (const auto& idx : j["order"]) {
        if (!idx.is_number_unsigned() || idx.get<std::size_t>() >= n) {
            throw ProviderError("remote: rank index out of range");
        }
        std::size_t i = idx.get<std::size_t>();
        if (seen[i]) throw ProviderError("remote: rank order repeats an index");
        seen[i] = true;
        order.push_back(i);
    }
    return order;
}

std::string rewrite_request_body(std::string_view text, providers::RewriteVariant variant) {
    json j;
    j["task"] = "rewrite";
    j["variant"] = std::string(providers::rewrite_variant_name(variant));
    j["text"] = std::string(text);
    return j.dump();
}

std::string parse_rewrite_response(const std::string& body) {
    json j = parse_json_or_throw(body, "rewrite");
    if (!j.contains("text") || !j["text"].is_string()) {
        throw ProviderError("remote: rewrite response missing 'text'");
    }
    return j["text"].get<std::string>();
}

struct RemoteTransport::Impl {
    Endpoint endpoint;
    providers::ProviderConfig config;
    std::string base;  // scheme://host[:port]
    std::string path;
    mutable std::atomic<int> requests_made{0};
};

namespace {

// Split scheme://host[:port]/path into the client base and request path.
std::pair<std::string, std::string> split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw ProviderError("remote: endpoint must include a scheme: " + url);
    }
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

RemoteTransport::RemoteTransport(Endpoint endpoint, providers::ProviderConfig config)
    : impl_(new Impl{std::move(endpoint), std::move(config), {}, {}, {}}) {
    std::tie(impl_->base, impl_->path) = split_url(impl_->endpoint.url);
}

RemoteTransport::~RemoteTransport() = default;

std::string RemoteTransport::post_json(const std::string& body) const {
    const auto& cfg = impl_->config;
    std::string last_error;
    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
        if (cfg.request_budget &&
            impl_->requests_made.fetch_add(1) >= *cfg.request_budget) {
            throw ProviderError("remote: request budget exhausted (" +
                                std::to_string(*cfg.request_budget) + ")");
        }
        httplib::Client client(impl_->base);
        auto seconds = std::chrono::duration_cast<std::chrono::seconds>(cfg.timeout);
        client.set_connection_timeout(seconds.count() > 0 ? seconds.count() : 1, 0);
        client.set_read_timeout(seconds.count() > 0 ? seconds.count() : 1, 0);
        if (impl_->endpoint.token) {
            client.set_bearer_token_auth(*impl_->endpoint.token);
        }
        auto result = client.Post(impl_->path, body, "application/json");
        if (result && result->status >= 200 && result->status < 300) {
            return result->body;
        }
        last_error = result ? "status " + std::to_string(result->status)
                            : "transport error " + std::string(httplib::to_string(result.error()));
    }
    throw ProviderError("remote: " + impl_->endpoint.url + " failed after " +
                        std::to_string(impl_->config.max_retries + 1) + " attempts: " +
                        last_error);
}

RemoteJudge::RemoteJudge(Endpoint endpoint, providers::ProviderConfig config)
    : transport_(std::move(endpoint), std::move(config)) {}

providers::DimScores RemoteJudge::judge_dimensions(std::string_view text) const {
    if (text.empty()) throw ProviderError("remote judge: empty text");
    std::string body = judge_request_body(text);
    try {
        return parse_judge_response(transport_.post_json(body));
    } catch (const ProviderError&) {
        // A reply that arrived but failed to parse gets exactly one more try.
        return parse_judge_response(transport_.post_json(body));
    }
}

RemotePerplexity::RemotePerplexity(Endpoint endpoint, providers::ProviderConfig config)
    : transport_(std::move(endpoint), std::move(config)) {}

double RemotePerplexity::perplexity(std::string_view text) const {
    if (text.empty()) throw ProviderError("remote perplexity: empty text");
    return parse_perplexity_response(transport_.post_json(perplexity_request_body(text)));
}

RemoteEmbedder::RemoteEmbedder(Endpoint endpoint, providers::ProviderConfig config)
    : transport_(std::move(endpoint), std::move(config)) {}

providers::UnitVector RemoteEmbedder::embed(std::string_view text) const {
    if (text.empty()) throw ProviderError("remote embed: empty text");
    return parse_embed_response(transport_.post_json(embed_request_body(text)));
}

RemoteRanker::RemoteRanker(Endpoint endpoint, providers::ProviderConfig config)
    : transport_(std::move(endpoint), std::move(config)) {}

std::vector<std::size_t> RemoteRanker::rank_candidates(
    std::string_view query, const std::vector<std::string>& descriptions) const {
    return parse_rank_response(transport_.post_json(rank_request_body(query, descriptions)),
                               descriptions.size());
}

RemoteRewriter::RemoteRewriter(Endpoint endpoint, providers::ProviderConfig config)
    : transport_(std::move(endpoint), std::move(config)) {}

std::string RemoteRewriter::rewrite_text(std::string_view text,
                                         providers::RewriteVariant variant) const {
    if (text.empty()) throw ProviderError("remote rewrite: empty text");
    return parse_rewrite_response(transport_.post_json(rewrite_request_body(text, variant)));
}

providers::ProviderSet make_remote_providers(const providers::ProviderConfig& config) {
    providers::ProviderSet set = providers::make_reference_providers();
    if (auto ep = endpoint_from_env(kJudgeEndpointVar, kJudgeTokenVar)) {
        set.judge = std::make_shared<RemoteJudge>(*ep, config);
    }
    if (auto ep = endpoint_from_env(kPerplexityEndpointVar, kPerplexityTokenVar)) {
        set.perplexity = std::make_shared<RemotePerplexity>(*ep, config);
    }
    if (auto ep = endpoint_from_env(kEmbedEndpointVar, kEmbedTokenVar)) {
        set.embed = std::make_shared<RemoteEmbedder>(*ep, config);
    }
    if (auto ep = endpoint_from_env(kRankEndpointVar, kRankTokenVar)) {
        set.rank = std::make_shared<RemoteRanker>(*ep, config);
    }
    if (auto ep = endpoint_from_env(kRewriteEndpointVar, kRewriteTokenVar)) {
        set.rewrite = std::make_shared<RemoteRewriter>(*ep, config);
    }
    return set;
}

}  // namespace geoshield::remote
