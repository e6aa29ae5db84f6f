#include "kecalc/cr3.hpp"

namespace kecalc {

std::string to_string(answer a) {
    switch (a) {
        case answer::yes: return "yes";
        case answer::no: return "no";
        case answer::out_of_scope: return "out_of_scope";
    }
    return "?";
}

namespace {

fiber_summary summarize(long long m, long long q) {
    fiber_summary f;
    f.m = m;
    f.q = q;
    f.entries = hj_entries(m, q);
    f.admissible = ke_admissible(f.entries);
    return f;
}

} // namespace

verdict classify_seifert(const seifert_data& s) {
    if (s.genus < 1)
        throw validation_error("OutOfScope",
                               "genus 0 bases belong to the sphere-quotient case; use the quotient entry point");
    verdict v;
    v.result = answer::yes;
    for (const auto& [m, q] : s.fibers) {
        fiber_summary f = summarize(m, q); // validates (m, q)
        if (!f.admissible) {
            v.result = answer::no;
            v.reasons.push_back("fiber (" + std::to_string(m) + "," + std::to_string(q) +
                                ") has an exceptional curve with self-intersection > -3");
        }
        v.per_fiber.push_back(std::move(f));
    }
    if (v.result == answer::yes) {
        v.reasons.push_back(s.fibers.empty()
                                ? "no multiple fibers; condition is vacuous"
                                : "every fiber chain has self-intersections <= -3");
        v.reasons.push_back("the bounding Kahler-Einstein surface is unique");
    }
    return v;
}

verdict classify_cyclic_quotient(long long p, long long q) {
    verdict v;
    fiber_summary f = summarize(p, q); // validates (p, q)
    v.result = f.admissible ? answer::yes : answer::no;
    if (q == p - 1)
        v.reasons.push_back("type (p, p-1): the group lies in SL(2,C), ruled out");
    if (!f.admissible)
        v.reasons.push_back("an exceptional curve has self-intersection > -3");
    else
        v.reasons.push_back("the bounding Kahler-Einstein surface is unique");
    v.per_fiber.push_back(std::move(f));
    return v;
}

verdict classify(const cr3_input& input) {
    if (std::holds_alternative<seifert_data>(input))
        return classify_seifert(std::get<seifert_data>(input));
    if (std::holds_alternative<quotient_data>(input)) {
        const auto& d = std::get<quotient_data>(input);
        return classify_cyclic_quotient(d.p, d.q);
    }
    verdict v;
    v.result = answer::out_of_scope;
    v.reasons.push_back("open cases of finite quotients");
    return v;
}

} // namespace kecalc
