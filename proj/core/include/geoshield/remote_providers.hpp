#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geoshield/providers.hpp"

namespace geoshield::remote {

/// Where a remote capability lives. The bearer token is optional; when
/// present it is sent as `Authorization: Bearer <token>`.
struct Endpoint {
    std::string url;
    std::optional<std::string> token;
};

/// Read an endpoint from the environment (e.g. GEOSHIELD_JUDGE_ENDPOINT /
/// GEOSHIELD_JUDGE_TOKEN). Returns nullopt when the endpoint variable is
/// unset or empty; tokens never travel through flags.
std::optional<Endpoint> endpoint_from_env(const char* endpoint_var, const char* token_var);

// Environment variable names, one pair per capability.
inline constexpr const char* kJudgeEndpointVar = "GEOSHIELD_JUDGE_ENDPOINT";
inline constexpr const char* kJudgeTokenVar = "GEOSHIELD_JUDGE_TOKEN";
inline constexpr const char* kPerplexityEndpointVar = "GEOSHIELD_PPL_ENDPOINT";
inline constexpr const char* kPerplexityTokenVar = "GEOSHIELD_PPL_TOKEN";
inline constexpr const char* kEmbedEndpointVar = "GEOSHIELD_EMBED_ENDPOINT";
inline constexpr const char* kEmbedTokenVar = "GEOSHIELD_EMBED_TOKEN";
inline constexpr const char* kRankEndpointVar = "GEOSHIELD_RANK_ENDPOINT";
inline constexpr const char* kRankTokenVar = "GEOSHIELD_RANK_TOKEN";
inline constexpr const char* kRewriteEndpointVar = "GEOSHIELD_REWRITE_ENDPOINT";
inline constexpr const char* kRewriteTokenVar = "GEOSHIELD_REWRITE_TOKEN";

// Wire format, split out from transport so it is testable without a
// server. All requests are JSON POST bodies; all numeric judge scores are
// clamped to [0,1] on parse.
std::string judge_request_body(std::string_view text);
providers::DimScores parse_judge_response(const std::string& body);
std::string perplexity_request_body(std::string_view text);
double parse_perplexity_response(const std::string& body);
std::string embed_request_body(std::string_view text);
providers::UnitVector parse_embed_response(const std::string& body);
std::string rank_request_body(std::string_view query, const std::vector<std::string>& descriptions);
std::vector<std::size_t> parse_rank_response(const std::string& body, std::size_t n);
std::string rewrite_request_body(std::string_view text, providers::RewriteVariant variant);
std::string parse_rewrite_response(const std::string& body);

/// Shared JSON-over-HTTP transport: retries transient failures up to
/// max_retries and enforces the optional per-run request budget. Throws
/// ProviderError on exhaustion of either.
class RemoteTransport {
public:
    RemoteTransport(Endpoint endpoint, providers::ProviderConfig config);
    ~RemoteTransport();

    std::string post_json(const std::string& body) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

class RemoteJudge : public providers::JudgeProvider {
public:
    RemoteJudge(Endpoint endpoint, providers::ProviderConfig config);
    providers::DimScores judge_dimensions(std::string_view text) const override;

private:
    RemoteTransport transport_;
};

class RemotePerplexity : public providers::PerplexityProvider {
public:
    RemotePerplexity(Endpoint endpoint, providers::ProviderConfig config);
    double perplexity(std::string_view text) const override;

private:
    RemoteTransport transport_;
};

class RemoteEmbedder : public providers::EmbedProvider {
public:
    RemoteEmbedder(Endpoint endpoint, providers::ProviderConfig config);
    providers::UnitVector embed(std::string_view text) const override;
    std::size_t dimension() const override { return 0; }  // server-defined

private:
    RemoteTransport transport_;
};

class RemoteRanker : public providers::RankProvider {
public:
    RemoteRanker(Endpoint endpoint, providers::ProviderConfig config);
    std::vector<std::size_t> rank_candidates(
        std::string_view query, const std::vector<std::string>& descriptions) const override;

private:
    RemoteTransport transport_;
};

class RemoteRewriter : public providers::RewriteProvider {
public:
    RemoteRewriter(Endpoint endpoint, providers::ProviderConfig config);
    std::string rewrite_text(std::string_view text,
                             providers::RewriteVariant variant) const override;

private:
    RemoteTransport transport_;
};

/// Provider set for `--providers remote`: each capability whose endpoint
/// variable is set gets a remote client; the rest keep their reference
/// implementations so partial remote setups still run.
providers::ProviderSet make_remote_providers(const providers::ProviderConfig& config = {});

}  // namespace geoshield::remote
