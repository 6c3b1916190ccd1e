// Acceptance gate: one pass/fail line per criterion, exit 0 only when all
// thirteen hold. The first argument is the path to the CLI binary, used by
// the determinism criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "geoshield/attacks.hpp"
#include "geoshield/corpus.hpp"
#include "geoshield/detectors.hpp"
#include "geoshield/embedded_data.hpp"
#include "geoshield/eval.hpp"
#include "geoshield/pipeline.hpp"
#include "geoshield/recovery.hpp"
#include "geoshield/reference_providers.hpp"

using namespace geoshield;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

// Detection rate for fake social proof with the reference judge, frozen
// from a pre-registered run of this suite (100 seeds, defaults).
constexpr double kFspOracleRate = 0.82;

const config::DefenseConfig kDefaults{};

pipeline::DefendedRanking defend_set(const corpus::CandidateSet& set,
                                     const providers::ProviderSet& providers,
                                     const pipeline::BaselineIndex& baselines) {
    return pipeline::run_sci_defense(set, kDefaults, providers, baselines);
}

std::vector<std::string> pre_order(const pipeline::DefendedRanking& ranking) {
    std::vector<std::string> ids(ranking.outcomes.size());
    for (const auto& o : ranking.outcomes) ids[o.pre_rank - 1] = o.record_id;
    return ids;
}

const pipeline::DefenseOutcome& outcome_of(const pipeline::DefendedRanking& ranking,
                                           const std::string& id) {
    for (const auto& o : ranking.outcomes) {
        if (o.record_id == id) return o;
    }
    throw std::runtime_error("outcome missing for " + id);
}

// A passage-style candidate set: longer multi-sentence slices of the
// reference corpus instead of short product blurbs.
corpus::CandidateSet passage_set(const std::string& category, std::size_t n,
                                 std::uint64_t seed) {
    std::vector<std::string> lines;
    {
        std::string_view blob = data::kReferenceCorpus;
        std::size_t pos = 0;
        while (pos < blob.size()) {
            auto end = blob.find('\n', pos);
            if (end == std::string_view::npos) end = blob.size();
            auto line = blob.substr(pos, end - pos);
            if (!line.empty()) lines.emplace_back(line);
            pos = end + 1;
        }
    }
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 17);
    corpus::CandidateSet set;
    for (std::size_t i = 0; i < n; ++i) {
        corpus::ProductRecord rec;
        rec.id = category.substr(0, 3) + "-psg-" + std::to_string(seed) + "-" + std::to_string(i);
        rec.category = category;
        std::size_t start = rng() % (lines.size() - 7);
        std::size_t count = 5 + rng() % 3;  // 5-7 sentences
        std::string description;
        for (std::size_t k = 0; k < count; ++k) {
            if (!description.empty()) description += ' ';
            description += lines[start + k];
        }
        rec.base_description = description;
        rec.title = "passage excerpt " + std::to_string(i);
        set.records.push_back(std::move(rec));
    }
    set.query = set.records.front().title;
    return set;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void criterion_1(const providers::ProviderSet& providers) {
    auto start = Clock::now();
    attacks::AttackSpec spec{AttackKind::String, 1.0, 101};
    auto dataset = fixtures::attacked_dataset(10, 2, spec, 101);  // 60 records
    pipeline::BaselineSpec ppl_only{pipeline::BaselineKind::PplOnly, {}, 0.5};
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (const auto& set : dataset.sets) {
        auto ranking = pipeline::run_baseline(set, ppl_only, kDefaults, providers);
        for (const auto& rec : set.records) {
            bool flagged = outcome_of(ranking, rec.id).penalized;
            if (rec.is_attacked && flagged) ++tp;
            else if (rec.is_attacked) ++fn;
            else if (flagged) ++fp;
            else ++tn;
        }
    }
    double elapsed = seconds_since(start);
    bool pass = tp == 12 && fn == 0 && fp == 0 && tn == 48 && elapsed < 10.0;
    report(1, "string-attack interception (PPL gate recall 1.000, FPR 0.000)", pass,
           "tp=" + std::to_string(tp) + " fp=" + std::to_string(fp) + " fn=" +
               std::to_string(fn) + " tn=" + std::to_string(tn) + " in " + fmt(elapsed) + "s");
}

void criterion_2(const providers::ProviderSet& providers) {
    std::size_t records = 0, flagged = 0;

    auto product = fixtures::clean_dataset(17, 2);  // 102 product-style records
    auto product_baselines = pipeline::BaselineIndex::fit(product, *providers.embed);
    for (const auto& set : product.sets) {
        auto ranking = defend_set(set, providers, product_baselines);
        for (const auto& o : ranking.outcomes) {
            ++records;
            if (o.penalized || o.breakdown.label != detect::Label::Clean) ++flagged;
        }
    }

    corpus::Dataset passages;  // 102 passage-style records
    for (std::size_t c = 0; c < fixtures::kCategories.size(); ++c) {
        passages.sets.push_back(passage_set(fixtures::kCategories[c], 17, 40 + c));
    }
    auto passage_baselines = pipeline::BaselineIndex::fit(passages, *providers.embed);
    for (const auto& set : passages.sets) {
        auto ranking = defend_set(set, providers, passage_baselines);
        for (const auto& o : ranking.outcomes) {
            ++records;
            if (o.penalized || o.breakdown.label != detect::Label::Clean) ++flagged;
        }
    }

    bool pass = records >= 200 && flagged == 0;
    report(2, "zero-FPR on clean product and passage prose", pass,
           std::to_string(flagged) + " of " + std::to_string(records) + " flagged");
}

void criterion_3(const providers::ProviderSet& providers) {
    bool pass = true;
    std::string detail;
    for (auto kind : {AttackKind::SpecAmplification, AttackKind::UseCaseSaturation}) {
        std::size_t below_tau = 0, undetected = 0, blocked = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            auto set = fixtures::clean_set(fixtures::kCategories[seed % 6], 6, 300 + seed);
            set.records[0] = attacks::apply_attack(set.records[0], {kind, 1.0, seed});
            set.target_id = set.records[0].id;

            corpus::Dataset one;
            one.sets.push_back(set);
            auto baselines = pipeline::BaselineIndex::fit(one, *providers.embed);
            auto ranking = defend_set(set, providers, baselines);
            const auto& target = outcome_of(ranking, set.records[0].id);
            if (target.breakdown.s_sis < kDefaults.thresholds.tau_s) ++below_tau;
            if (target.breakdown.label == detect::Label::Clean) {
                ++undetected;
                if (eval::block_at_k(pre_order(ranking), ranking.ordered_ids,
                                     set.records[0].id, 3)) {
                    ++blocked;
                }
            }
        }
        if (below_tau < 95 || blocked != 0) pass = false;
        detail += std::string(attack_kind_name(kind)) + ": s_sis<tau_s on " +
                  std::to_string(below_tau) + "/100, blocked " + std::to_string(blocked) +
                  "/" + std::to_string(undetected) + "  ";
    }
    report(3, "blind spots: spec amplification and use-case saturation slip through", pass,
           detail);
}

void criterion_4(const providers::ProviderSet& providers) {
    std::size_t detected = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto set = fixtures::clean_set(fixtures::kCategories[seed % 6], 6, 500 + seed);
        set.records[0] =
            attacks::apply_attack(set.records[0], {AttackKind::FakeSocialProof, 1.0, seed});
        set.target_id = set.records[0].id;
        corpus::Dataset one;
        one.sets.push_back(set);
        auto baselines = pipeline::BaselineIndex::fit(one, *providers.embed);
        auto ranking = defend_set(set, providers, baselines);
        if (outcome_of(ranking, set.records[0].id).breakdown.label != detect::Label::Clean) {
            ++detected;
        }
    }
    double rate = double(detected) / 100.0;
    bool pass = rate >= 0.80 && std::abs(rate - kFspOracleRate) <= 0.05;
    report(4, "fake social proof detectability", pass,
           "rate " + fmt(rate) + " vs frozen oracle " + fmt(kFspOracleRate));
}

void criterion_5() {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    detect::SISWeights w;
    detect::BoostRule rule;
    std::size_t bad = 0;
    for (int i = 0; i < 1000; ++i) {
        providers::DimScores d{unit(rng), unit(rng), unit(rng), unit(rng)};
        double base_oracle = 0.30 * d.aa + 0.25 * d.np + 0.25 * d.ca + 0.20 * d.tc;
        if (std::abs(detect::sis_base(d, w) - base_oracle) > 1e-12) ++bad;

        double maxdim = std::max(std::max(d.aa, d.np), std::max(d.ca, d.tc));
        bool boosted = maxdim >= rule.theta_maxdim &&
                       (d.np >= rule.theta_np || d.ca >= rule.theta_ca);
        double score_oracle = std::min(1.0, base_oracle * (boosted ? rule.beta : 1.0));
        if (std::abs(detect::sis_score(d, w, rule) - score_oracle) > 1e-12) ++bad;

        detect::Thresholds t;
        t.alpha = 0.05 + 0.9 * unit(rng);
        double s_sis = unit(rng), s_icd = unit(rng);
        double blend_oracle = t.alpha * s_sis + (1.0 - t.alpha) * s_icd;
        if (std::abs(detect::blend_scores(s_sis, s_icd, t) - blend_oracle) > 1e-12) ++bad;
    }
    report(5, "arithmetic matches independent oracles to 1e-12 on 1,000 inputs", bad == 0,
           std::to_string(bad) + " mismatches");
}

void criterion_6() {
    auto start = Clock::now();
    detect::BoostRule rule;  // RevisedMaxDim
    std::size_t violations = 0, points = 0;
    for (int a = 0; a <= 20; ++a)
        for (int n = 0; n <= 20; ++n)
            for (int c = 0; c <= 20; ++c)
                for (int t = 0; t <= 20; ++t) {
                    ++points;
                    providers::DimScores d{a * 0.05, n * 0.05, c * 0.05, t * 0.05};
                    if (d.np < 0.5 && d.ca < 0.5 && detect::boost_applies(d, rule)) ++violations;
                }
    double elapsed = seconds_since(start);
    bool pass = violations == 0 && points == 194481 && elapsed < 5.0;
    report(6, "revised boost never fires without np>=0.5 or ca>=0.5 (exhaustive grid)", pass,
           std::to_string(points) + " points, " + std::to_string(violations) +
               " violations in " + fmt(elapsed) + "s");
}

void criterion_7(const providers::ProviderSet& providers) {
    auto clean = fixtures::clean_dataset(6, 600);
    auto baselines = pipeline::BaselineIndex::fit(clean, *providers.embed);
    std::mt19937_64 rng(601);
    std::size_t bad = 0;
    for (int run = 0; run < 1000; ++run) {
        const auto& category = fixtures::kCategories[rng() % 6];
        std::size_t n = 3 + rng() % 4;
        auto set = fixtures::clean_set(category, n, rng());
        std::size_t attacked = rng() % std::min<std::size_t>(3, n);
        for (std::size_t i = 0; i < attacked; ++i) {
            auto kind = kAllAttackKinds[rng() % std::size(kAllAttackKinds)];
            double intensity = 0.2 + 0.8 * (double(rng() % 1000) / 999.0);
            set.records[i] = attacks::apply_attack(set.records[i], {kind, intensity, rng()});
        }
        auto ranking = defend_set(set, providers, baselines);

        std::set<std::string> flagged_ids, penalized_ids;
        for (const auto& o : ranking.outcomes) {
            if (o.breakdown.label != detect::Label::Clean) flagged_ids.insert(o.record_id);
            if (o.penalized) penalized_ids.insert(o.record_id);
        }
        bool ok = flagged_ids == penalized_ids;
        bool seen_penalized = false;
        for (const auto& id : ranking.ordered_ids) {
            bool p = penalized_ids.count(id) > 0;
            if (p) seen_penalized = true;
            else if (seen_penalized) ok = false;  // clean record after a penalized one
        }
        if (!ok) ++bad;
    }
    report(7, "flagged = penalized and penalized always trail (1,000 randomized runs)",
           bad == 0, std::to_string(bad) + " inconsistent runs");
}

void criterion_8() {
    std::size_t mismatches = 0, cases = 0;
    for (std::size_t n = 1; n <= 7; ++n) {
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < n; ++i) ids.push_back(std::string(1, char('a' + i)));
        std::sort(ids.begin(), ids.end());
        do {
            for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                std::set<std::string> flagged;
                for (std::size_t i = 0; i < n; ++i) {
                    if (mask & (1u << i)) flagged.insert(std::string(1, char('a' + i)));
                }
                // brute-force stable partition
                std::vector<std::string> expected;
                for (const auto& id : ids)
                    if (!flagged.count(id)) expected.push_back(id);
                for (const auto& id : ids)
                    if (flagged.count(id)) expected.push_back(id);
                ++cases;
                if (pipeline::penalize(ids, flagged) != expected) ++mismatches;
            }
        } while (std::next_permutation(ids.begin(), ids.end()));
    }
    report(8, "penalize equals brute-force stable partition (exhaustive, n<=7)",
           mismatches == 0,
           std::to_string(cases) + " cases, " + std::to_string(mismatches) + " mismatches");
}

void criterion_9(const providers::ProviderSet& providers) {
    pipeline::BaselineSpec ppl_only{pipeline::BaselineKind::PplOnly, {}, 0.5};
    pipeline::BaselineSpec safety{pipeline::BaselineKind::SafetyClf, {}, 0.5};
    std::size_t ppl_tp = 0, safety_tp = 0, attacked = 0;

    for (auto kind : {AttackKind::Reasoning, AttackKind::Review}) {
        auto dataset = fixtures::attacked_dataset(5, 2, {kind, 1.0, 700}, 700);
        for (const auto& set : dataset.sets) {
            auto ranking = pipeline::run_baseline(set, ppl_only, kDefaults, providers);
            for (const auto& rec : set.records) {
                if (rec.is_attacked && outcome_of(ranking, rec.id).penalized) ++ppl_tp;
            }
        }
    }
    for (auto kind : kAllAttackKinds) {
        auto dataset = fixtures::attacked_dataset(4, 1, {kind, 1.0, 710}, 710);
        for (const auto& set : dataset.sets) {
            auto ranking = pipeline::run_baseline(set, safety, kDefaults, providers);
            for (const auto& rec : set.records) {
                if (rec.is_attacked) {
                    ++attacked;
                    if (outcome_of(ranking, rec.id).penalized) ++safety_tp;
                }
            }
        }
    }
    bool pass = ppl_tp == 0 && safety_tp == 0 && attacked > 0;
    report(9, "baseline blind spots: PplOnly misses semantic attacks, SafetyClf misses all",
           pass, "ppl_tp=" + std::to_string(ppl_tp) + " safety_tp=" + std::to_string(safety_tp));
}

void criterion_10() {
    std::size_t mismatches = 0, cases = 0;
    for (std::size_t n = 1; n <= 6; ++n) {
        std::size_t assignments = 1;
        for (std::size_t i = 0; i < n; ++i) assignments *= 4;
        for (std::size_t code = 0; code < assignments; ++code) {
            eval::ConfusionCounts counts;
            std::size_t rest = code;
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t cell = rest % 4;
                rest /= 4;
                bool truth = cell & 1, pred = cell & 2;
                if (truth && pred) ++counts.tp;
                else if (truth) ++counts.fn;
                else if (pred) ++counts.fp;
                else ++counts.tn;
            }
            auto m = eval::compute_metrics(counts);
            double recall = counts.tp + counts.fn
                                ? double(counts.tp) / double(counts.tp + counts.fn)
                                : 0.0;
            double precision = counts.tp + counts.fp
                                   ? double(counts.tp) / double(counts.tp + counts.fp)
                                   : 1.0;
            double fpr = counts.fp + counts.tn
                             ? double(counts.fp) / double(counts.fp + counts.tn)
                             : 0.0;
            double f1 = precision + recall > 0.0
                            ? 2.0 * precision * recall / (precision + recall)
                            : 0.0;
            bool by_convention = counts.tp + counts.fp == 0;
            ++cases;
            if (m.recall != recall || m.precision != precision || m.fpr != fpr || m.f1 != f1 ||
                m.precision_by_convention != by_convention) {
                ++mismatches;
            }
        }
    }
    report(10, "compute_metrics matches brute-force enumeration (exhaustive, n<=6)",
           mismatches == 0,
           std::to_string(cases) + " cases, " + std::to_string(mismatches) + " mismatches");
}

void criterion_11(const providers::ProviderSet& providers) {
    auto start = Clock::now();

    // Validation fixture: six 4-record sets, two per attack style.
    std::vector<corpus::CandidateSet> validation;
    const AttackKind kinds[] = {AttackKind::String,          AttackKind::String,
                                AttackKind::Reasoning,       AttackKind::Reasoning,
                                AttackKind::FakeSocialProof, AttackKind::FakeSocialProof};
    for (std::size_t i = 0; i < 6; ++i) {
        auto set = fixtures::clean_set(fixtures::kCategories[i], 4, 800 + i);
        set.records[0] = attacks::apply_attack(set.records[0], {kinds[i], 1.0, 800 + i});
        set.target_id = set.records[0].id;
        validation.push_back(std::move(set));
    }

    // 500-point grid: 50 tau_s values x 10 tau_m gaps.
    eval::CalibrationGrid grid;
    for (int s = 0; s < 50; ++s) {
        for (int g = 1; g <= 10; ++g) {
            eval::GridPoint p{kDefaults.weights, kDefaults.thresholds, kDefaults.boost};
            p.thresholds.tau_s = 0.30 + 0.01 * s;
            p.thresholds.tau_m = p.thresholds.tau_s + 0.03 * g;
            grid.points.push_back(p);
        }
    }

    auto result = eval::calibrate(validation, grid, providers);

    // Independent replay: recompute per-record signals and score every
    // grid point from scratch.
    auto baselines = pipeline::BaselineIndex::fit(validation, *providers.embed);
    struct Sig {
        double ppl;
        providers::DimScores dims;
        providers::UnitVector vec;
        bool attacked;
    };
    std::vector<std::vector<Sig>> sigs;
    for (const auto& set : validation) {
        std::vector<Sig> row;
        for (const auto& rec : set.records) {
            auto text = corpus::concat_description(rec);
            row.push_back({providers.perplexity->perplexity(text),
                           providers.judge->judge_dimensions(text),
                           providers.embed->embed(text), rec.is_attacked});
        }
        sigs.push_back(std::move(row));
    }

    struct Scored {
        std::size_t index;
        eval::Metrics m;
    };
    std::vector<Scored> scored;
    for (std::size_t p = 0; p < grid.points.size(); ++p) {
        const auto& point = grid.points[p];
        eval::ConfusionCounts counts;
        for (std::size_t s = 0; s < sigs.size(); ++s) {
            for (std::size_t i = 0; i < sigs[s].size(); ++i) {
                const auto& sig = sigs[s][i];
                bool flag;
                if (sig.ppl > point.thresholds.tau_ppl) {
                    flag = true;
                } else {
                    double s_sis = detect::sis_score(sig.dims, point.weights, point.boost);
                    std::vector<providers::UnitVector> peers;
                    for (std::size_t j = 0; j < sigs[s].size(); ++j) {
                        if (j != i && sigs[s][j].ppl <= point.thresholds.tau_ppl) {
                            peers.push_back(sigs[s][j].vec);
                        }
                    }
                    double s_icd =
                        peers.empty()
                            ? 0.5
                            : detect::icd_score(sig.vec, peers,
                                                *baselines.find(validation[s].records[i].category));
                    double s_final = detect::blend_scores(s_sis, s_icd, point.thresholds);
                    flag = detect::classify_label(s_final, point.thresholds) !=
                           detect::Label::Clean;
                }
                if (sig.attacked && flag) ++counts.tp;
                else if (sig.attacked) ++counts.fn;
                else if (flag) ++counts.fp;
                else ++counts.tn;
            }
        }
        scored.push_back({p, eval::compute_metrics(counts)});
    }

    auto better = [&](const Scored& a, const Scored& b) {
        if (a.m.f1 != b.m.f1) return a.m.f1 > b.m.f1;
        if (a.m.recall != b.m.recall) return a.m.recall > b.m.recall;
        double ta = grid.points[a.index].thresholds.tau_s;
        double tb = grid.points[b.index].thresholds.tau_s;
        if (ta != tb) return ta < tb;
        return grid.points[a.index].thresholds.tau_m < grid.points[b.index].thresholds.tau_m;
    };
    const Scored* best = nullptr;
    for (const auto& c : scored) {
        if (c.m.fpr != 0.0) continue;
        if (best == nullptr || better(c, *best)) best = &c;
    }
    bool replay_matches = best != nullptr &&
        grid.points[best->index].thresholds.tau_s == result.chosen.thresholds.tau_s &&
        grid.points[best->index].thresholds.tau_m == result.chosen.thresholds.tau_m &&
        best->m.f1 == result.f1 && best->m.fpr == result.fpr &&
        best->m.recall == result.recall;

    // Pareto: nothing dominates the chosen point on (fpr down, f1 up).
    bool undominated = true;
    for (const auto& c : scored) {
        bool dominates = c.m.fpr <= result.fpr && c.m.f1 >= result.f1 &&
                         (c.m.fpr < result.fpr || c.m.f1 > result.f1);
        if (dominates) undominated = false;
    }

    double elapsed = seconds_since(start);
    bool pass = replay_matches && undominated && result.grid_size == 500 && elapsed < 60.0;
    report(11, "calibration matches exhaustive replay on a 500-point grid", pass,
           "chosen tau_s=" + fmt(result.chosen.thresholds.tau_s) + " f1=" + fmt(result.f1) +
               " fpr=" + fmt(result.fpr) + (replay_matches ? "" : " (replay mismatch)") +
               (undominated ? "" : " (dominated)") + " in " + fmt(elapsed) + "s");
}

void criterion_12(const providers::ProviderSet& providers) {
    using recovery::RecoveryMethod;
    const RecoveryMethod singles[] = {RecoveryMethod::PplTruncation, RecoveryMethod::PatternCut,
                                      RecoveryMethod::LlmExtraction};
    std::map<RecoveryMethod, double> total;
    std::size_t n = 30;
    for (std::uint64_t seed = 0; seed < n; ++seed) {
        auto set = fixtures::clean_set(fixtures::kCategories[seed % 6], 2, 900 + seed);
        auto attacked =
            attacks::apply_attack(set.records[0], {AttackKind::String, 1.0, seed});
        for (auto method : singles) {
            auto recovered = recovery::recover_record(attacked, method, providers);
            total[method] += recovery::composite_similarity(attacked.base_description,
                                                            recovered, *providers.embed);
        }
    }
    double mean_trunc = total[RecoveryMethod::PplTruncation] / double(n);
    double mean_cut = total[RecoveryMethod::PatternCut] / double(n);
    double mean_llm = total[RecoveryMethod::LlmExtraction] / double(n);
    bool ordering = mean_trunc >= 0.95 && mean_trunc > mean_cut && mean_trunc > mean_llm;

    // TwoStage dispatch table.
    bool dispatch = true;
    const std::pair<AttackKind, RecoveryMethod> table[] = {
        {AttackKind::String, RecoveryMethod::PplTruncation},
        {AttackKind::Reasoning, RecoveryMethod::PatternCut},
        {AttackKind::Review, RecoveryMethod::LlmExtraction},
        {AttackKind::SeoStuffing, RecoveryMethod::Hybrid},
        {AttackKind::AuthorityInjection, RecoveryMethod::Hybrid},
        {AttackKind::FakeSocialProof, RecoveryMethod::Hybrid},
        {AttackKind::SpecAmplification, RecoveryMethod::Hybrid},
        {AttackKind::UseCaseSaturation, RecoveryMethod::Hybrid},
        {AttackKind::HybridStealth, RecoveryMethod::Hybrid},
    };
    auto set = fixtures::clean_set("Kitchen", 2, 950);
    for (const auto& [kind, method] : table) {
        auto attacked = attacks::apply_attack(set.records[0], {kind, 1.0, 12});
        if (recovery::recover_record(attacked, RecoveryMethod::TwoStage, providers) !=
            recovery::recover_record(attacked, method, providers)) {
            dispatch = false;
        }
    }
    report(12, "recovery: truncation wins the string fixture; two-stage dispatch table holds",
           ordering && dispatch,
           "means trunc=" + fmt(mean_trunc) + " cut=" + fmt(mean_cut) + " llm=" +
               fmt(mean_llm) + (dispatch ? "" : " (dispatch mismatch)"));
}

void criterion_13(const std::string& cli_path) {
    if (cli_path.empty()) {
        report(13, "CLI determinism", false, "no CLI path passed as argv[1]");
        return;
    }
    auto dataset = fixtures::attacked_dataset(4, 1, {AttackKind::Reasoning, 1.0, 5}, 5);
    std::string dir = "acceptance_tmp";
    std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());
    std::string data_path = dir + "/fixture.jsonl";
    corpus::save_dataset(dataset, data_path);

    bool pass = true;
    std::string detail;
    for (int run = 1; run <= 2; ++run) {
        std::string cmd = cli_path + " evaluate --dataset " + data_path +
                          " --defense sci --providers reference --seed 7" + " --report-out " +
                          dir + "/report" + std::to_string(run) + ".jsonl" + " --audit-out " +
                          dir + "/audit" + std::to_string(run) + ".jsonl";
        int rc = std::system(cmd.c_str());
        if (rc != 0) {
            pass = false;
            detail = "CLI exited with " + std::to_string(rc);
        }
    }
    if (pass) {
        bool reports_equal =
            read_file(dir + "/report1.jsonl") == read_file(dir + "/report2.jsonl");
        bool audits_equal = read_file(dir + "/audit1.jsonl") == read_file(dir + "/audit2.jsonl");
        bool nonempty = !read_file(dir + "/report1.jsonl").empty() &&
                        !read_file(dir + "/audit1.jsonl").empty();
        pass = reports_equal && audits_equal && nonempty;
        detail = std::string("reports ") + (reports_equal ? "identical" : "differ") +
                 ", audits " + (audits_equal ? "identical" : "differ");
    }
    std::system(("rm -rf " + dir).c_str());
    report(13, "CLI runs are byte-identical under a fixed seed", pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli_path = argc > 1 ? argv[1] : "";
    auto providers = providers::make_reference_providers();
    try {
        criterion_1(providers);
        criterion_2(providers);
        criterion_3(providers);
        criterion_4(providers);
        criterion_5();
        criterion_6();
        criterion_7(providers);
        criterion_8();
        criterion_9(providers);
        criterion_10();
        criterion_11(providers);
        criterion_12(providers);
        criterion_13(cli_path);
    } catch (const std::exception& e) {
        std::printf("[FAIL] acceptance aborted: %s\n", e.what());
        return 1;
    }
    std::printf("%d of 13 criteria passed\n", 13 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
