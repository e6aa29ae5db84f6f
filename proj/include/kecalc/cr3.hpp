#pragma once

#include <string>
#include <variant>
#include <vector>

#include "kecalc/hj.hpp"

namespace kecalc {

/// Seifert circle bundle over a surface: base genus and multiple fibers
/// classified by pairs (m_j, q_j) with 0 < q_j < m_j coprime.
struct seifert_data {
    int genus = 0;
    std::vector<std::pair<long long, long long>> fibers;
};

enum class answer { yes, no, out_of_scope };

std::string to_string(answer a);

struct fiber_summary {
    long long m = 0;
    long long q = 0;
    std::vector<long long> entries;
    bool admissible = false;
};

/// Decision record: yes when every fiber (or the cyclic quotient itself)
/// resolves into a chain with all self-intersections <= -3.
struct verdict {
    answer result = answer::no;
    std::vector<std::string> reasons;
    std::vector<fiber_summary> per_fiber;
};

/// Genus >= 1 Seifert cases: bounds a Kahler-Einstein surface iff every
/// multiple fiber's chain is admissible.  An empty fiber list is a yes.
/// Throws OutOfScope for genus 0, which belongs to the sphere-quotient case.
verdict classify_seifert(const seifert_data& s);

/// Sphere-quotient case with cyclic group of type (p; q).  Also flags the
/// q = p - 1 family, whose group sits in SL(2, C).
verdict classify_cyclic_quotient(long long p, long long q);

/// Marker for the non-cyclic (polyhedral) finite quotients, which stay open.
struct polyhedral_marker {};

using cr3_input = std::variant<seifert_data, quotient_data, polyhedral_marker>;

/// Dispatch over the three input forms.
verdict classify(const cr3_input& input);

} // namespace kecalc
