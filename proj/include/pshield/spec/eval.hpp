#pragma once

#include <pshield/spec/ast.hpp>

#include <map>
#include <string>
#include <vector>

namespace pshield::spec
{

using Valuation = std::map<std::string, double>;
using Trace = std::vector<Valuation>;

/// Evaluates `e` at `step`; prev() at step 0 reads the declared init value.
double eval_expr (const SpecDocument &doc, const ArithExpr &e, const Trace &trace, std::size_t step);
bool eval_atom (const SpecDocument &doc, const Atom &a, const Trace &trace, std::size_t step);
bool eval_formula (const SpecDocument &doc, const Formula &f, const Trace &trace, std::size_t step);

/**
 * @brief Finite-trace satisfaction of (AND assumptions) -> (AND guarantees) at step 0.
 *
 * G ranges over the remaining trace; X and GB obligations that fall past the
 * last step are vacuously true.
 *
 * @throws SpecError on an empty trace, a step missing a declared variable,
 *         a missing init value for a step-0 prev() read, or division by zero.
 */
bool eval_bounded (const SpecDocument &doc, const Trace &trace);

} // namespace pshield::spec
