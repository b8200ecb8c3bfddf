#pragma once

#include <set>
#include <string>
#include <vector>

namespace whcone {

/**
 * Standalone re-check of a surface certificate document.
 *
 * The checker decodes the JSON itself and re-derives every claim from
 * primitive predicates; it calls nothing else in the library.  Categories:
 * format, involution, morphism, star-bijection, bijectivity, immersion,
 * admissibility, local-irreducibility, gluing, count, fatform, replay,
 * summary.
 */
struct CheckIssue
{
    std::string category;
    std::string message;
};

struct CheckReport
{
    std::vector<CheckIssue> issues;

    bool ok() const { return issues.empty(); }
    std::set<std::string> categories() const;
};

CheckReport check_certificate(const std::string& json_text);

} // namespace whcone
