#include <pshield/spec/ast.hpp>

#include <algorithm>
#include <utility>

namespace pshield::spec
{

ArithExpr ArithExpr::constant (double v)
{
    ArithExpr e;
    e.op = ArithOp::Const;
    e.value = v;
    return e;
}

ArithExpr ArithExpr::var (std::string n)
{
    ArithExpr e;
    e.op = ArithOp::Var;
    e.name = std::move (n);
    return e;
}

ArithExpr ArithExpr::prev (std::string n)
{
    ArithExpr e;
    e.op = ArithOp::Prev;
    e.name = std::move (n);
    return e;
}

ArithExpr ArithExpr::unary (ArithOp op, ArithExpr a)
{
    ArithExpr e;
    e.op = op;
    e.args.push_back (std::move (a));
    return e;
}

ArithExpr ArithExpr::binary (ArithOp op, ArithExpr a, ArithExpr b)
{
    ArithExpr e;
    e.op = op;
    e.args.push_back (std::move (a));
    e.args.push_back (std::move (b));
    return e;
}

bool contains_prev (const ArithExpr &e)
{
    if (e.op == ArithOp::Prev)
        return true;
    return std::any_of (e.args.begin (), e.args.end (), [] (const ArithExpr &a) { return contains_prev (a); });
}

void collect_vars (const ArithExpr &e, std::vector<std::string> &out, bool include_prev)
{
    if (e.op == ArithOp::Var || (include_prev && e.op == ArithOp::Prev))
    {
        if (std::find (out.begin (), out.end (), e.name) == out.end ())
            out.push_back (e.name);
        return;
    }
    for (const auto &a : e.args)
        collect_vars (a, out, include_prev);
}

ArithExpr substitute (const ArithExpr &e, const std::string &name, const ArithExpr &with)
{
    if (e.op == ArithOp::Var && e.name == name)
        return with;
    ArithExpr out = e;
    for (auto &a : out.args)
        a = substitute (a, name, with);
    return out;
}

ArithExpr drop_prev (const ArithExpr &e)
{
    if (e.op == ArithOp::Prev)
        return ArithExpr::var (e.name);
    ArithExpr out = e;
    for (auto &a : out.args)
        a = drop_prev (a);
    return out;
}

} // namespace pshield::spec
