#pragma once

#include <pshield/spec/ast.hpp>

#include <string>

namespace pshield::spec
{

enum class FragmentClass
{
    NCS,          ///< no prev() anywhere
    Anticipation, ///< every prev() sits in a dynamics binding of a predicate-isolated variable
    CrossState,
};

std::string to_string (FragmentClass c);

struct FragmentReport
{
    FragmentClass cls = FragmentClass::NCS;
    std::string offending_atom; ///< printed atom that forced CrossState, empty otherwise
    std::string reason;
};

FragmentReport analyse_fragment (const SpecDocument &doc);
FragmentClass classify_fragment (const SpecDocument &doc);

/**
 * @brief Eliminate prev() from an anticipation-fragment document.
 *
 * Each dynamics assumption `G (v == t(prev ...))` is replaced by
 * `G ((P1[v := t'] -> X P1) & ... )` over the predicates P that mention v,
 * where t' reads the current step instead of prev. A step-0 assumption
 * `(P1[v := t(init)] -> P1) & ...` pins the predicates at the first step.
 * Every other formula is kept as is.
 *
 * @throws SpecError(CrossState) naming the offending atom.
 */
SpecDocument rewrite_anticipation (const SpecDocument &doc);

} // namespace pshield::spec
