#include <doctest.h>

#include "geoshield/attacks.hpp"
#include "geoshield/error.hpp"
#include "geoshield/recovery.hpp"
#include "geoshield/reference_providers.hpp"

using namespace geoshield;

namespace {

corpus::ProductRecord sample_record() {
    corpus::ProductRecord rec;
    rec.id = "rec-1";
    rec.category = "Kitchen";
    rec.title = "Copper Kettle";
    rec.base_description =
        "The kettle is made of brushed stainless steel and holds 1.7 liters. "
        "It boils a full jug in about four minutes. "
        "The handle stays cool during operation.";
    return rec;
}

}  // namespace

TEST_CASE("composite similarity: identical text scores 1, empty original throws") {
    auto providers = providers::make_reference_providers();
    auto rec = sample_record();
    CHECK(recovery::composite_similarity(rec.base_description, rec.base_description,
                                         *providers.embed) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(
        (void)recovery::composite_similarity("", "anything", *providers.embed), DataError);
    // lcs half + cosine: a strict prefix keeps a sizable share
    double partial = recovery::composite_similarity(
        rec.base_description, "The kettle is made of brushed stainless steel and holds 1.7 liters.",
        *providers.embed);
    CHECK(partial > 0.4);
    CHECK(partial < 1.0);
}

TEST_CASE("ppl truncation cuts a string injection but keeps clean prose intact") {
    auto providers = providers::make_reference_providers();
    auto rec = sample_record();

    auto untouched = recovery::recover_text(rec.base_description,
                                            recovery::RecoveryMethod::PplTruncation, providers);
    CHECK(untouched == rec.base_description);

    auto attacked = attacks::apply_attack(rec, {AttackKind::String, 1.0, 7});
    auto recovered =
        recovery::recover_record(attacked, recovery::RecoveryMethod::PplTruncation, providers);
    double sim =
        recovery::composite_similarity(rec.base_description, recovered, *providers.embed);
    CHECK(sim >= 0.95);
}

TEST_CASE("pattern cut drops marker sentences and is idempotent") {
    auto providers = providers::make_reference_providers();
    std::string text =
        "The kettle holds 1.7 liters. "
        "I purchased it and therefore I agree that it is better than the rest. "
        "The handle stays cool.";
    auto once = recovery::recover_text(text, recovery::RecoveryMethod::PatternCut, providers);
    CHECK(once.find("therefore") == std::string::npos);
    CHECK(once.find("kettle holds") != std::string::npos);
    auto twice = recovery::recover_text(once, recovery::RecoveryMethod::PatternCut, providers);
    CHECK(twice == once);
}

TEST_CASE("recovery never returns an empty string") {
    auto providers = providers::make_reference_providers();
    std::string all_marked =
        "I purchased it and therefore it wins. My experience says you should agree.";
    for (auto method : {recovery::RecoveryMethod::PatternCut,
                        recovery::RecoveryMethod::LlmExtraction,
                        recovery::RecoveryMethod::Hybrid}) {
        CHECK_FALSE(recovery::recover_text(all_marked, method, providers).empty());
    }
}

TEST_CASE("two-stage dispatch matches the per-kind best method") {
    auto providers = providers::make_reference_providers();
    auto rec = sample_record();

    struct Case {
        AttackKind kind;
        recovery::RecoveryMethod expected;
    };
    const Case cases[] = {
        {AttackKind::String, recovery::RecoveryMethod::PplTruncation},
        {AttackKind::Reasoning, recovery::RecoveryMethod::PatternCut},
        {AttackKind::Review, recovery::RecoveryMethod::LlmExtraction},
        {AttackKind::SeoStuffing, recovery::RecoveryMethod::Hybrid},
        {AttackKind::HybridStealth, recovery::RecoveryMethod::Hybrid},
    };
    for (const auto& c : cases) {
        auto attacked = attacks::apply_attack(rec, {c.kind, 1.0, 13});
        CHECK(recovery::recover_record(attacked, recovery::RecoveryMethod::TwoStage, providers) ==
              recovery::recover_record(attacked, c.expected, providers));
    }

    // unattacked records pass through unchanged
    CHECK(recovery::recover_record(rec, recovery::RecoveryMethod::TwoStage, providers) ==
          rec.base_description);
    // two-stage needs a record, not bare text
    CHECK_THROWS_AS(
        (void)recovery::recover_text("text", recovery::RecoveryMethod::TwoStage, providers),
        UsageError);
}

TEST_CASE("recovery method names roundtrip") {
    for (auto method : {recovery::RecoveryMethod::PplTruncation,
                        recovery::RecoveryMethod::PatternCut,
                        recovery::RecoveryMethod::LlmExtraction,
                        recovery::RecoveryMethod::Hybrid,
                        recovery::RecoveryMethod::TwoStage}) {
        auto parsed = recovery::parse_recovery_method(recovery::recovery_method_name(method));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == method);
    }
    CHECK_FALSE(recovery::parse_recovery_method("mystery").has_value());
}
