#ifndef ALOGLAB_GROUNDER_HPP
#define ALOGLAB_GROUNDER_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aloglab/ast.hpp"
#include "aloglab/flog.hpp"

namespace aloglab {

// Constants occurring in the program plus the declared integer interval.
std::set<Constant> herbrand_constants(const Program& p, const std::optional<IntRange>& range);

// Grounds free variable occurrences over the Herbrand constants; bound
// occurrences inside set names are kept. Arithmetic is evaluated; instances
// whose evaluated literal arguments escape the Herbrand constants are dropped
// with a warning. Throws GroundingError on unsafe rules.
Program ground_alog(const Program& p, const std::optional<IntRange>& range,
                    std::vector<std::string>* warnings = nullptr);

// Two-step grounding: substitute global variables, then expand each symbolic
// set name into a ground set over its local substitutions. Requires the common
// fragment (no classical negation, no set atoms, no subset introduction).
flog::ProgramF ground_flog(const Program& p, const std::optional<IntRange>& range,
                           std::vector<std::string>* warnings = nullptr);

// Variables with a free occurrence in the rule (𝒜log notion).
std::set<std::string> free_variables(const Rule& r);

// Variables occurring outside every aggregate term of the rule, or in more
// than one aggregate term (ℱlog notion).
std::set<std::string> global_variables(const Rule& r);

}  // namespace aloglab

#endif
