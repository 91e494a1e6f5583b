#include <pshield/spec/eval.hpp>

#include <cmath>

namespace pshield::spec
{
namespace
{

double lookup (const Trace &trace, std::size_t step, const std::string &name)
{
    const auto &v = trace[step];
    auto it = v.find (name);
    if (it == v.end ())
        throw SpecError (SpecErrorKind::MissingVariable, "step " + std::to_string (step) + " does not assign '" + name + "'");
    return it->second;
}

} // namespace

double eval_expr (const SpecDocument &doc, const ArithExpr &e, const Trace &trace, std::size_t step)
{
    switch (e.op)
    {
    case ArithOp::Const: return e.value;
    case ArithOp::Var: return lookup (trace, step, e.name);
    case ArithOp::Prev:
    {
        if (step > 0)
            return lookup (trace, step - 1, e.name);
        const VariableDecl *v = doc.find (e.name);
        if (!v || !v->init)
            throw SpecError (SpecErrorKind::MissingInitialValue, "prev(" + e.name + ") at step 0 needs an init value");
        return *v->init;
    }
    case ArithOp::Add: return eval_expr (doc, e.args[0], trace, step) + eval_expr (doc, e.args[1], trace, step);
    case ArithOp::Sub: return eval_expr (doc, e.args[0], trace, step) - eval_expr (doc, e.args[1], trace, step);
    case ArithOp::Mul: return eval_expr (doc, e.args[0], trace, step) * eval_expr (doc, e.args[1], trace, step);
    case ArithOp::Div:
    {
        const double den = eval_expr (doc, e.args[1], trace, step);
        if (den == 0.0)
            throw SpecError (SpecErrorKind::DivisionByZero, "division by zero at step " + std::to_string (step));
        return eval_expr (doc, e.args[0], trace, step) / den;
    }
    case ArithOp::Neg: return -eval_expr (doc, e.args[0], trace, step);
    case ArithOp::Sin: return std::sin (eval_expr (doc, e.args[0], trace, step));
    case ArithOp::Cos: return std::cos (eval_expr (doc, e.args[0], trace, step));
    case ArithOp::Abs: return std::fabs (eval_expr (doc, e.args[0], trace, step));
    }
    return 0.0;
}

bool eval_atom (const SpecDocument &doc, const Atom &a, const Trace &trace, std::size_t step)
{
    const double l = eval_expr (doc, a.lhs, trace, step);
    const double r = eval_expr (doc, a.rhs, trace, step);
    if (a.kind == AtomKind::InRange)
        return r <= l && l <= eval_expr (doc, a.upper, trace, step);
    switch (a.op)
    {
    case CmpOp::Lt: return l < r;
    case CmpOp::Le: return l <= r;
    case CmpOp::Eq: return l == r;
    case CmpOp::Ge: return l >= r;
    case CmpOp::Gt: return l > r;
    }
    return false;
}

bool eval_formula (const SpecDocument &doc, const Formula &f, const Trace &trace, std::size_t step)
{
    const std::size_t n = trace.size ();
    switch (f.kind)
    {
    case FormulaKind::Atom: return eval_atom (doc, *f.atom, trace, step);
    case FormulaKind::Not: return !eval_formula (doc, f.children[0], trace, step);
    case FormulaKind::And: return eval_formula (doc, f.children[0], trace, step) && eval_formula (doc, f.children[1], trace, step);
    case FormulaKind::Or: return eval_formula (doc, f.children[0], trace, step) || eval_formula (doc, f.children[1], trace, step);
    case FormulaKind::Implies: return !eval_formula (doc, f.children[0], trace, step) || eval_formula (doc, f.children[1], trace, step);
    case FormulaKind::Always:
        for (std::size_t t = step; t < n; ++t)
            if (!eval_formula (doc, f.children[0], trace, t))
                return false;
        return true;
    case FormulaKind::AlwaysBounded:
        for (std::size_t k = static_cast<std::size_t> (f.lo); k <= static_cast<std::size_t> (f.hi) && step + k < n; ++k)
            if (!eval_formula (doc, f.children[0], trace, step + k))
                return false;
        return true;
    case FormulaKind::Next: return step + 1 >= n || eval_formula (doc, f.children[0], trace, step + 1);
    }
    return false;
}

bool eval_bounded (const SpecDocument &doc, const Trace &trace)
{
    if (trace.empty ())
        throw SpecError (SpecErrorKind::MissingVariable, "trace must contain at least one step");
    for (std::size_t t = 0; t < trace.size (); ++t)
        for (const auto &v : doc.variables)
            lookup (trace, t, v.name);

    for (const auto &a : doc.assumptions)
        if (!eval_formula (doc, a, trace, 0))
            return true;
    for (const auto &g : doc.guarantees)
        if (!eval_formula (doc, g, trace, 0))
            return false;
    return true;
}

} // namespace pshield::spec
