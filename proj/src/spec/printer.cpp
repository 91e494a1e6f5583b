#include <pshield/spec/parser.hpp>

#include <charconv>
#include <cmath>
#include <sstream>

namespace pshield::spec
{
namespace
{

std::string number (double v)
{
    if (std::isinf (v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars (buf, buf + sizeof buf, v);
    (void)ec;
    return std::string (buf, ptr);
}

const char *cmp_text (CmpOp op)
{
    switch (op)
    {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Eq: return "==";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
    }
    return "?";
}

} // namespace

std::string print_expr (const ArithExpr &e)
{
    switch (e.op)
    {
    case ArithOp::Const: return number (e.value);
    case ArithOp::Var: return e.name;
    case ArithOp::Prev: return "prev(" + e.name + ")";
    case ArithOp::Neg: return "-(" + print_expr (e.args[0]) + ")";
    case ArithOp::Sin: return "sin(" + print_expr (e.args[0]) + ")";
    case ArithOp::Cos: return "cos(" + print_expr (e.args[0]) + ")";
    case ArithOp::Abs: return "abs(" + print_expr (e.args[0]) + ")";
    case ArithOp::Add: return "(" + print_expr (e.args[0]) + " + " + print_expr (e.args[1]) + ")";
    case ArithOp::Sub: return "(" + print_expr (e.args[0]) + " - " + print_expr (e.args[1]) + ")";
    case ArithOp::Mul: return "(" + print_expr (e.args[0]) + " * " + print_expr (e.args[1]) + ")";
    case ArithOp::Div: return "(" + print_expr (e.args[0]) + " / " + print_expr (e.args[1]) + ")";
    }
    return "?";
}

std::string print_atom (const Atom &a)
{
    if (a.kind == AtomKind::InRange)
        return "in(" + print_expr (a.lhs) + ", " + print_expr (a.rhs) + ", " + print_expr (a.upper) + ")";
    return print_expr (a.lhs) + " " + cmp_text (a.op) + " " + print_expr (a.rhs);
}

std::string print_formula (const Formula &f)
{
    switch (f.kind)
    {
    case FormulaKind::Atom: return print_atom (*f.atom);
    case FormulaKind::Not: return "!" + print_formula (f.children[0]);
    case FormulaKind::Always: return "G " + print_formula (f.children[0]);
    case FormulaKind::Next: return "X " + print_formula (f.children[0]);
    case FormulaKind::AlwaysBounded:
        return "GB(" + std::to_string (f.lo) + ", " + std::to_string (f.hi) + ") " + print_formula (f.children[0]);
    case FormulaKind::And: return "(" + print_formula (f.children[0]) + " & " + print_formula (f.children[1]) + ")";
    case FormulaKind::Or: return "(" + print_formula (f.children[0]) + " | " + print_formula (f.children[1]) + ")";
    case FormulaKind::Implies: return "(" + print_formula (f.children[0]) + " -> " + print_formula (f.children[1]) + ")";
    }
    return "?";
}

std::string print_spec (const SpecDocument &doc)
{
    std::ostringstream out;
    for (const auto &v : doc.variables)
    {
        out << (v.role == Role::Environment ? "input " : "output ") << v.name;
        if (!(std::isinf (v.lo) && v.lo < 0 && std::isinf (v.hi) && v.hi > 0))
            out << " [" << number (v.lo) << ", " << number (v.hi) << "]";
        if (!v.unit.empty ())
            out << " " << v.unit;
        if (v.init)
            out << " init " << number (*v.init);
        out << ";\n";
    }
    for (const auto &f : doc.assumptions)
        out << "assume " << print_formula (f) << ";\n";
    for (const auto &f : doc.guarantees)
        out << "guarantee " << print_formula (f) << ";\n";
    return out.str ();
}

} // namespace pshield::spec
