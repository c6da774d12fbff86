#include "flightgate/compliance.hpp"
#include "flightgate/explain.hpp"

#include "fixtures.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace flightgate;
using test::answers_yes;

namespace {

bool active(int id, const AnswerSet& answers, const ComplianceKb& kb) {
    const auto ids = active_violations(answers, kb);
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

AnswerSet random_answers(std::mt19937_64& rng, const ComplianceKb& kb, double yes_probability) {
    std::bernoulli_distribution d(yes_probability);
    AnswerSet a;
    for (const auto& c : kb.conditions()) a[c] = d(rng);
    return a;
}

const std::string kTinyQuestions = R"([
  {"id": "a", "condition": "a", "text": "A?", "display_order": 1},
  {"id": "b", "condition": "b", "text": "B?", "display_order": 2}
])";

} // namespace

// ── minimal_fix ──────────────────────────────────────────────────────────

TEST_CASE("heavy uncertified aircraft: certify it", "[fix]") {
    const auto& kb = test::ama_kb();
    const auto answers = answers_yes(kb, {"aircraft_weighs_above_55_pounds"});
    const auto fix = minimal_fix(7, answers, kb);
    REQUIRE(fix.available);
    CHECK(fix.changes == std::vector<ConditionChange>{{"certified_by_ama_large_program", false, true}});
    CHECK(fix.diagnostic.empty());
    CHECK(fix.candidates_examined >= 2);
    CHECK(fix.resulting_model.holds(naf(kb.violation_atom(7))));
}

TEST_CASE("alcohol: stop drinking", "[fix]") {
    const auto& kb = test::ama_kb();
    const auto fix = minimal_fix(3, answers_yes(kb, {"alcohol_drug_influence"}), kb);
    REQUIRE(fix.available);
    CHECK(fix.changes == std::vector<ConditionChange>{{"alcohol_drug_influence", true, false}});
}

TEST_CASE("fixing an absent violation is a precondition error", "[fix][errors]") {
    const auto& kb = test::ama_kb();
    CHECK_THROWS_AS(minimal_fix(7, answers_yes(kb), kb), PreconditionError);
    CHECK_THROWS_AS(minimal_fix(7, {}, kb), AnswerError);
}

TEST_CASE("unconditional violation has no fix", "[fix]") {
    const auto kb = ComplianceKb::from_sources("violation_1.\nviolation_2 :- a, not b.", kTinyQuestions);
    const AnswerSet answers{{"a", true}, {"b", false}};
    const auto fix = minimal_fix(1, answers, kb);
    CHECK_FALSE(fix.available);
    CHECK(fix.changes.empty());
    CHECK_FALSE(fix_oracle(1, answers, kb).min_flips.has_value());

    const auto v2 = minimal_fix(2, answers, kb);
    REQUIRE(v2.available);
    CHECK(v2.changes == std::vector<ConditionChange>{{"b", false, true}});
}

// ── fix_oracle ───────────────────────────────────────────────────────────

TEST_CASE("fix oracle on the named scenarios", "[fix_oracle]") {
    const auto& kb = test::ama_kb();
    const auto heavy = fix_oracle(7, answers_yes(kb, {"aircraft_weighs_above_55_pounds"}), kb);
    REQUIRE(heavy.min_flips == 1U);
    CHECK(heavy.minimal_sets == std::vector<std::vector<ConditionChange>>{
                                    {{"aircraft_weighs_above_55_pounds", true, false}},
                                    {{"certified_by_ama_large_program", false, true}},
                                });
    const auto alcohol = fix_oracle(3, answers_yes(kb, {"alcohol_drug_influence"}), kb);
    REQUIRE(alcohol.min_flips == 1U);
    CHECK(alcohol.minimal_sets.size() == 1);
}

TEST_CASE("fix oracle refuses large questionnaires", "[fix_oracle][errors]") {
    std::string kb_src = "violation_1 :- ";
    std::string questions = "[";
    for (int i = 0; i < 21; ++i) {
        const auto c = "c" + std::to_string(i);
        kb_src += (i ? ", " : "") + c;
        questions += std::string(i ? "," : "") + R"({"id": ")" + c + R"(", "condition": ")" + c +
                     R"(", "text": "?", "display_order": )" + std::to_string(i + 1) + "}";
    }
    const auto kb = ComplianceKb::from_sources(kb_src + ".", questions + "]");
    AnswerSet answers;
    for (const auto& c : kb.conditions()) answers[c] = true;
    CHECK_THROWS_AS(fix_oracle(1, answers, kb), PreconditionError);
}

// ── full_compliance_fix ──────────────────────────────────────────────────

TEST_CASE("full compliance fix", "[full_fix]") {
    const auto& kb = test::ama_kb();
    SECTION("single violation equals the minimal fix") {
        const auto answers = answers_yes(kb, {"aircraft_weighs_above_55_pounds"});
        CHECK(full_compliance_fix(answers, kb).changes == minimal_fix(7, answers, kb).changes);
    }
    SECTION("violations 3 and 7 need two changes") {
        const auto answers = answers_yes(kb, {"aircraft_weighs_above_55_pounds", "alcohol_drug_influence"});
        const auto fix = full_compliance_fix(answers, kb);
        REQUIRE(fix.available);
        CHECK(fix.changes.size() == 2);
        CHECK(fix_oracle(kb.violation_ids(), answers, kb).min_flips == 2U);
        CHECK(active_violations(apply_changes(answers, fix.changes), kb).empty());
    }
    SECTION("compliant answers need nothing") {
        const auto fix = full_compliance_fix(answers_yes(kb), kb);
        CHECK(fix.available);
        CHECK(fix.changes.empty());
    }
}

// ── properties ───────────────────────────────────────────────────────────

TEST_CASE("minimal fixes are optimal, valid, minimal and stable", "[fix][property]") {
    const auto& kb = test::ama_kb();
    std::mt19937_64 rng(0x5eed'0401);
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
        const auto answers = random_answers(rng, kb, 0.3);
        for (int id : active_violations(answers, kb)) {
            const auto fix = minimal_fix(id, answers, kb);
            const auto truth = fix_oracle(id, answers, kb);
            REQUIRE(fix.available == truth.min_flips.has_value());
            if (!fix.available) continue;
            ++checked;
            // Optimality.
            REQUIRE(fix.changes.size() == *truth.min_flips);
            REQUIRE(std::find(truth.minimal_sets.begin(), truth.minimal_sets.end(), fix.changes) !=
                    truth.minimal_sets.end());
            // Validity.
            REQUIRE_FALSE(active(id, apply_changes(answers, fix.changes), kb));
            // Minimality: dropping any single change brings the violation back.
            for (std::size_t k = 0; k < fix.changes.size(); ++k) {
                auto fewer = fix.changes;
                fewer.erase(fewer.begin() + static_cast<long>(k));
                REQUIRE(active(id, apply_changes(answers, fewer), kb));
            }
            // Stability: every change is a condition the chosen model mentions.
            for (const auto& c : fix.changes) {
                const AtomId atom = kb.condition_atom(c.condition);
                REQUIRE(fix.resulting_model.holds(c.to ? pos(atom) : naf(atom)));
                REQUIRE(c.from == answers.at(c.condition));
                REQUIRE(c.from != c.to);
            }
        }
    }
    CHECK(checked > 20);
}

TEST_CASE("full compliance fixes are optimal and valid", "[full_fix][property]") {
    const auto& kb = test::ama_kb();
    std::mt19937_64 rng(0x5eed'0402);
    for (int i = 0; i < 25; ++i) {
        const auto answers = random_answers(rng, kb, 0.15);
        const auto fix = full_compliance_fix(answers, kb);
        REQUIRE(fix.available);
        REQUIRE(active_violations(apply_changes(answers, fix.changes), kb).empty());
        if (fix.changes.size() <= 3) {
            REQUIRE(fix_oracle(kb.violation_ids(), answers, kb).min_flips == fix.changes.size());
        }
    }
}
