#include <pshield/spec/parser.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <utility>

namespace pshield::spec
{
namespace
{

enum class TokKind
{
    Ident,
    Number,
    Punct,
    End,
};

struct Token
{
    TokKind kind = TokKind::End;
    std::string text;
    double number = 0.0;
    int line = 1;
    int column = 1;
};

bool is_keyword (const std::string &s)
{
    static const std::set<std::string> kw{"input", "output", "assume", "guarantee", "init", "G",   "X",
                                          "GB",    "prev",   "in",     "sin",       "cos",  "abs", "inf"};
    return kw.count (s) > 0;
}

std::vector<Token> tokenize (std::string_view text)
{
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto advance = [&] (std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i)
        {
            if (text[i] == '\n')
            {
                ++line;
                col = 1;
            }
            else
                ++col;
        }
    };

    while (i < text.size ())
    {
        const char c = text[i];
        if (c == '#')
        {
            while (i < text.size () && text[i] != '\n')
                advance (1);
            continue;
        }
        if (std::isspace (static_cast<unsigned char> (c)))
        {
            advance (1);
            continue;
        }

        Token t;
        t.line = line;
        t.column = col;

        if (std::isalpha (static_cast<unsigned char> (c)) || c == '_')
        {
            std::size_t j = i;
            while (j < text.size () && (std::isalnum (static_cast<unsigned char> (text[j])) || text[j] == '_'))
                ++j;
            t.kind = TokKind::Ident;
            t.text = std::string (text.substr (i, j - i));
            advance (j - i);
            out.push_back (std::move (t));
            continue;
        }
        if (std::isdigit (static_cast<unsigned char> (c)) || (c == '.' && i + 1 < text.size () && std::isdigit (static_cast<unsigned char> (text[i + 1]))))
        {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars (text.data () + i, text.data () + text.size (), v);
            if (ec != std::errc ())
                throw SpecError (SpecErrorKind::Syntax, "malformed number", line, col);
            const std::size_t len = static_cast<std::size_t> (ptr - (text.data () + i));
            t.kind = TokKind::Number;
            t.number = v;
            t.text = std::string (text.substr (i, len));
            advance (len);
            out.push_back (std::move (t));
            continue;
        }

        static const char *two[] = {"->", "==", "<=", ">="};
        bool matched = false;
        for (const char *p : two)
        {
            if (text.substr (i, 2) == p)
            {
                t.kind = TokKind::Punct;
                t.text = p;
                advance (2);
                out.push_back (t);
                matched = true;
                break;
            }
        }
        if (matched)
            continue;

        static const std::string single = "()[],;+-*/<>!&|";
        if (single.find (c) == std::string::npos)
            throw SpecError (SpecErrorKind::Syntax, std::string ("unexpected character '") + c + "'", line, col);
        t.kind = TokKind::Punct;
        t.text = std::string (1, c);
        advance (1);
        out.push_back (std::move (t));
    }

    Token end;
    end.kind = TokKind::End;
    end.line = line;
    end.column = col;
    out.push_back (end);
    return out;
}

class Parser
{
  public:
    explicit Parser (std::vector<Token> toks) : toks_ (std::move (toks)) {}

    SpecDocument document ()
    {
        SpecDocument doc;
        while (peek ().kind != TokKind::End)
        {
            const Token &t = peek ();
            if (t.kind != TokKind::Ident)
                fail ("expected 'input', 'output', 'assume' or 'guarantee'");
            if (t.text == "input" || t.text == "output")
                doc.variables.push_back (declaration ());
            else if (t.text == "assume")
            {
                next ();
                doc.assumptions.push_back (formula ());
                expect (";");
            }
            else if (t.text == "guarantee")
            {
                next ();
                doc.guarantees.push_back (formula ());
                expect (";");
            }
            else
                fail ("expected 'input', 'output', 'assume' or 'guarantee', got '" + t.text + "'");
        }
        return doc;
    }

  private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::set<std::string> declared_;

    const Token &peek () const { return toks_[pos_]; }
    const Token &next () { return toks_[pos_++]; }

    bool at (const char *punct) const { return peek ().kind == TokKind::Punct && peek ().text == punct; }
    bool at_ident (const char *word) const { return peek ().kind == TokKind::Ident && peek ().text == word; }

    [[noreturn]] void fail (const std::string &msg) const
    {
        throw SpecError (SpecErrorKind::Syntax, msg, peek ().line, peek ().column);
    }

    void expect (const char *punct)
    {
        if (!at (punct))
            fail (std::string ("expected '") + punct + "'" + (peek ().kind == TokKind::End ? " before end of input" : ", got '" + peek ().text + "'"));
        next ();
    }

    std::string identifier ()
    {
        if (peek ().kind != TokKind::Ident || is_keyword (peek ().text))
            fail ("expected identifier");
        return next ().text;
    }

    int integer ()
    {
        if (peek ().kind != TokKind::Number || std::floor (peek ().number) != peek ().number)
            fail ("expected integer");
        return static_cast<int> (next ().number);
    }

    double signed_number (bool allow_inf)
    {
        double sign = 1.0;
        if (at ("-"))
        {
            next ();
            sign = -1.0;
        }
        if (allow_inf && at_ident ("inf"))
        {
            next ();
            return sign * std::numeric_limits<double>::infinity ();
        }
        if (peek ().kind != TokKind::Number)
            fail ("expected number");
        return sign * next ().number;
    }

    VariableDecl declaration ()
    {
        const Token kw = next ();
        VariableDecl v;
        v.role = kw.text == "input" ? Role::Environment : Role::System;
        const Token &name_tok = peek ();
        v.name = identifier ();
        if (declared_.count (v.name))
            throw SpecError (SpecErrorKind::DuplicateDeclaration, "variable '" + v.name + "' declared twice", name_tok.line, name_tok.column);

        if (at ("["))
        {
            next ();
            v.lo = signed_number (true);
            expect (",");
            v.hi = signed_number (true);
            expect ("]");
            if (!(v.lo <= v.hi))
                throw SpecError (SpecErrorKind::InvalidBound, "empty domain for '" + v.name + "'", name_tok.line, name_tok.column);
        }
        if (peek ().kind == TokKind::Ident && peek ().text != "init")
            v.unit = identifier ();
        if (at_ident ("init"))
        {
            next ();
            v.init = signed_number (false);
        }
        if (v.role == Role::System && !v.bounded ())
            throw SpecError (SpecErrorKind::UnboundedSystemDomain, "output '" + v.name + "' needs a bounded domain", name_tok.line, name_tok.column);
        expect (";");
        declared_.insert (v.name);
        return v;
    }

    Formula formula ()
    {
        Formula lhs = disjunction ();
        if (at ("->"))
        {
            next ();
            return Formula::make_implies (std::move (lhs), formula ());
        }
        return lhs;
    }

    Formula disjunction ()
    {
        Formula f = conjunction ();
        while (at ("|"))
        {
            next ();
            f = Formula::make_or (std::move (f), conjunction ());
        }
        return f;
    }

    Formula conjunction ()
    {
        Formula f = unary ();
        while (at ("&"))
        {
            next ();
            f = Formula::make_and (std::move (f), unary ());
        }
        return f;
    }

    Formula unary ()
    {
        if (at ("!"))
        {
            next ();
            return Formula::make_not (unary ());
        }
        if (at_ident ("G"))
        {
            next ();
            return Formula::make_always (unary ());
        }
        if (at_ident ("X"))
        {
            next ();
            return Formula::make_next (unary ());
        }
        if (at_ident ("GB"))
        {
            const Token &t = next ();
            expect ("(");
            const int lo = integer ();
            expect (",");
            const int hi = integer ();
            expect (")");
            if (lo < 1 || hi < lo)
                throw SpecError (SpecErrorKind::InvalidBound, "GB bounds must satisfy 1 <= lo <= hi", t.line, t.column);
            return Formula::make_always_bounded (lo, hi, unary ());
        }
        return primary ();
    }

    Formula primary ()
    {
        if (!at ("("))
            return Formula::make_atom (atom ());

        // '(' opens either an arithmetic term of an atom or a nested formula.
        const std::size_t save = pos_;
        try
        {
            return Formula::make_atom (atom ());
        }
        catch (const SpecError &as_atom)
        {
            if (as_atom.kind () != SpecErrorKind::Syntax)
                throw;
            pos_ = save;
            try
            {
                next ();
                Formula f = formula ();
                expect (")");
                return f;
            }
            catch (const SpecError &as_formula)
            {
                if (as_formula.kind () != SpecErrorKind::Syntax)
                    throw;
                const bool atom_further = std::pair (as_atom.line (), as_atom.column ()) > std::pair (as_formula.line (), as_formula.column ());
                throw atom_further ? as_atom : as_formula;
            }
        }
    }

    Atom atom ()
    {
        Atom a;
        if (at_ident ("in"))
        {
            next ();
            expect ("(");
            a.kind = AtomKind::InRange;
            a.lhs = expr ();
            expect (",");
            a.rhs = expr ();
            expect (",");
            a.upper = expr ();
            expect (")");
            return a;
        }
        a.kind = AtomKind::Compare;
        a.lhs = expr ();
        if (at ("<"))
            a.op = CmpOp::Lt;
        else if (at ("<="))
            a.op = CmpOp::Le;
        else if (at ("=="))
            a.op = CmpOp::Eq;
        else if (at (">="))
            a.op = CmpOp::Ge;
        else if (at (">"))
            a.op = CmpOp::Gt;
        else
            fail ("expected comparison operator");
        next ();
        a.rhs = expr ();
        return a;
    }

    ArithExpr expr ()
    {
        ArithExpr e = term ();
        while (at ("+") || at ("-"))
        {
            const ArithOp op = next ().text == "+" ? ArithOp::Add : ArithOp::Sub;
            e = ArithExpr::binary (op, std::move (e), term ());
        }
        return e;
    }

    ArithExpr term ()
    {
        ArithExpr e = factor ();
        while (at ("*") || at ("/"))
        {
            const ArithOp op = next ().text == "*" ? ArithOp::Mul : ArithOp::Div;
            e = ArithExpr::binary (op, std::move (e), factor ());
        }
        return e;
    }

    std::string declared_name ()
    {
        const Token &t = peek ();
        std::string n = identifier ();
        if (!declared_.count (n))
            throw SpecError (SpecErrorKind::UndeclaredVariable, "undeclared variable '" + n + "'", t.line, t.column);
        return n;
    }

    ArithExpr factor ()
    {
        if (at ("-"))
        {
            next ();
            if (peek ().kind == TokKind::Number)
                return ArithExpr::constant (-next ().number);
            return ArithExpr::unary (ArithOp::Neg, factor ());
        }
        if (peek ().kind == TokKind::Number)
            return ArithExpr::constant (next ().number);
        if (at ("("))
        {
            next ();
            ArithExpr e = expr ();
            expect (")");
            return e;
        }
        if (at_ident ("prev"))
        {
            next ();
            expect ("(");
            if (at_ident ("prev"))
                fail ("prev() may only wrap a variable");
            std::string n = declared_name ();
            expect (")");
            return ArithExpr::prev (std::move (n));
        }
        for (auto [word, op] : {std::pair{"sin", ArithOp::Sin}, std::pair{"cos", ArithOp::Cos}, std::pair{"abs", ArithOp::Abs}})
        {
            if (at_ident (word))
            {
                next ();
                expect ("(");
                ArithExpr e = expr ();
                expect (")");
                return ArithExpr::unary (op, std::move (e));
            }
        }
        if (peek ().kind == TokKind::Ident)
            return ArithExpr::var (declared_name ());
        fail ("expected arithmetic term");
    }
};

void check_vars (const SpecDocument &doc, const Formula &f)
{
    std::vector<const Atom *> atoms;
    collect_atoms (f, atoms);
    for (const Atom *a : atoms)
        for (const auto &n : atom_vars (*a, true))
            if (!doc.find (n))
                throw SpecError (SpecErrorKind::UndeclaredVariable, "undeclared variable '" + n + "'");
}

bool only_prev_reads (const ArithExpr &e)
{
    if (e.op == ArithOp::Var)
        return false;
    for (const auto &a : e.args)
        if (!only_prev_reads (a))
            return false;
    return true;
}

} // namespace

void validate (SpecDocument &doc)
{
    std::set<std::string> names;
    for (const auto &v : doc.variables)
    {
        if (!names.insert (v.name).second)
            throw SpecError (SpecErrorKind::DuplicateDeclaration, "variable '" + v.name + "' declared twice");
        if (v.role == Role::System && !v.bounded ())
            throw SpecError (SpecErrorKind::UnboundedSystemDomain, "output '" + v.name + "' needs a bounded domain");
    }
    for (const auto &f : doc.assumptions)
        check_vars (doc, f);
    for (const auto &f : doc.guarantees)
        check_vars (doc, f);

    doc.dynamics.clear ();
    for (std::size_t i = 0; i < doc.assumptions.size (); ++i)
    {
        const Formula &f = doc.assumptions[i];
        if (f.kind != FormulaKind::Always || f.children[0].kind != FormulaKind::Atom)
            continue;
        const Atom &a = *f.children[0].atom;
        if (a.kind != AtomKind::Compare || a.op != CmpOp::Eq)
            continue;
        const ArithExpr *target = nullptr;
        const ArithExpr *update = nullptr;
        if (a.lhs.op == ArithOp::Var && only_prev_reads (a.rhs) && contains_prev (a.rhs))
        {
            target = &a.lhs;
            update = &a.rhs;
        }
        else if (a.rhs.op == ArithOp::Var && only_prev_reads (a.lhs) && contains_prev (a.lhs))
        {
            target = &a.rhs;
            update = &a.lhs;
        }
        if (!target || doc.binding_for (target->name))
            continue;
        doc.dynamics.push_back (DynamicsBinding{target->name, *update, i});
    }

    doc.warnings.clear ();
    if (doc.guarantees.empty ())
        doc.warnings.push_back ("document has no guarantees; every trace satisfies it");
}

SpecDocument parse_spec (std::string_view text)
{
    Parser p (tokenize (text));
    SpecDocument doc = p.document ();
    validate (doc);
    return doc;
}

} // namespace pshield::spec
