#include "meanscape/expr.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <utility>

#include "meanscape/middle.hpp"

namespace meanscape {

ParseError::ParseError(ParseErrorKind kind, std::size_t position, std::size_t length,
                       const std::string& message)
    : Error(std::string(to_string(kind)) + " error at position " + std::to_string(position) +
            ": " + message),
      kind_(kind), position_(position), length_(length), detail_(message) {}

std::string_view to_string(ParseErrorKind k) noexcept {
    switch (k) {
    case ParseErrorKind::Lexical: return "lexical";
    case ParseErrorKind::Syntax: return "syntax";
    case ParseErrorKind::UnknownIdentifier: return "unknown identifier";
    }
    return "?";
}

bool structurally_equal(const ExprNode& a, const ExprNode& b) noexcept {
    if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
    switch (a.kind) {
    case ExprNode::Kind::Number:
        if (a.value != b.value) return false;
        break;
    case ExprNode::Kind::Variable:
        if (a.variable != b.variable) return false;
        break;
    case ExprNode::Kind::Binary:
        if (a.op != b.op) return false;
        break;
    case ExprNode::Kind::Call:
        if (a.function != b.function) return false;
        break;
    case ExprNode::Kind::Negate:
        break;
    }
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!structurally_equal(*a.children[i], *b.children[i])) return false;
    return true;
}

namespace {

constexpr int kMaxDepth = 256;

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    Tok kind;
    std::size_t pos;  // 0-based
    std::size_t len;
    double number = 0.0;
    std::string text;
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (is_digit(c) || (c == '.' && i + 1 < s.size() && is_digit(s[i + 1]))) {
            while (i < s.size() && is_digit(s[i])) ++i;
            if (i < s.size() && s[i] == '.') {
                ++i;
                while (i < s.size() && is_digit(s[i])) ++i;
            }
            if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
                if (j >= s.size() || !is_digit(s[j]))
                    throw ParseError(ParseErrorKind::Lexical, start + 1, j - start,
                                     "malformed exponent in number");
                while (j < s.size() && is_digit(s[j])) ++j;
                i = j;
            }
            const std::string text(s.substr(start, i - start));
            const double v = std::strtod(text.c_str(), nullptr);
            if (!std::isfinite(v))
                throw ParseError(ParseErrorKind::Lexical, start + 1, text.size(), "number out of range");
            out.push_back({Tok::Number, start, i - start, v, text});
            continue;
        }
        if (is_ident_start(c)) {
            while (i < s.size() && is_ident_char(s[i])) ++i;
            out.push_back({Tok::Ident, start, i - start, 0.0, std::string(s.substr(start, i - start))});
            continue;
        }
        Tok k;
        switch (c) {
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '^': k = Tok::Caret; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ',': k = Tok::Comma; break;
        default: {
            std::string shown;
            if (std::isprint(static_cast<unsigned char>(c))) {
                shown = std::string("'") + c + "'";
            } else {
                char buf[8];
                std::snprintf(buf, sizeof buf, "0x%02X", static_cast<unsigned>(static_cast<unsigned char>(c)));
                shown = buf;
            }
            throw ParseError(ParseErrorKind::Lexical, start + 1, 1, "unexpected character " + shown);
        }
        }
        ++i;
        out.push_back({k, start, 1, 0.0, {}});
    }
    out.push_back({Tok::End, s.size(), 0, 0.0, {}});
    return out;
}

int arity(std::string_view f) {
    if (f == "sqrt" || f == "exp" || f == "log" || f == "abs") return 1;
    if (f == "min" || f == "max" || f == "pow" || f == "A" || f == "G" || f == "H" || f == "AGM")
        return 2;
    return 0;
}

bool is_mean_name(std::string_view f) { return f == "A" || f == "G" || f == "H" || f == "AGM"; }

ExprNodePtr make_number(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Number;
    n->value = v;
    return n;
}

ExprNodePtr make_variable(int v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Variable;
    n->variable = v;
    return n;
}

ExprNodePtr make_negate(ExprNodePtr c) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Negate;
    n->children.push_back(std::move(c));
    return n;
}

ExprNodePtr make_binary(BinaryOp op, ExprNodePtr l, ExprNodePtr r) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Binary;
    n->op = op;
    n->children.push_back(std::move(l));
    n->children.push_back(std::move(r));
    return n;
}

ExprNodePtr make_call(std::string f, std::vector<ExprNodePtr> args) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Call;
    n->function = std::move(f);
    n->children = std::move(args);
    return n;
}

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::Number: return "number '" + t.text + "'";
    case Tok::Ident: return "identifier '" + t.text + "'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::End: return "end of input";
    }
    return "?";
}

class Parser {
public:
    Parser(std::vector<Token> toks, ExprContext ctx) : toks_(std::move(toks)), ctx_(ctx) {}

    ExprNodePtr parse() {
        auto e = expr(0);
        if (peek().kind != Tok::End) fail(peek(), "unexpected " + describe(peek()));
        return e;
    }

private:
    const Token& peek() const { return toks_[i_]; }
    const Token& next() { return toks_[i_++]; }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const {
        throw ParseError(ParseErrorKind::Syntax, t.pos + 1, t.len, msg);
    }

    void enter(int depth) const {
        if (depth > kMaxDepth) fail(peek(), "expression nested too deeply");
    }

    void expect(Tok k, const char* what) {
        if (peek().kind != k) fail(peek(), std::string("expected ") + what + ", found " + describe(peek()));
        ++i_;
    }

    ExprNodePtr expr(int depth) {
        enter(depth);
        auto lhs = term(depth);
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const BinaryOp op = next().kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
            lhs = make_binary(op, lhs, term(depth));
        }
        return lhs;
    }

    ExprNodePtr term(int depth) {
        auto lhs = unary(depth);
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            const BinaryOp op = next().kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
            lhs = make_binary(op, lhs, unary(depth));
        }
        return lhs;
    }

    ExprNodePtr unary(int depth) {
        enter(depth + 1);
        if (peek().kind == Tok::Minus) {
            ++i_;
            return make_negate(unary(depth + 1));
        }
        return power(depth + 1);
    }

    ExprNodePtr power(int depth) {
        auto base = primary(depth);
        if (peek().kind == Tok::Caret) {
            ++i_;
            return make_binary(BinaryOp::Pow, base, unary(depth + 1));
        }
        return base;
    }

    ExprNodePtr primary(int depth) {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Number:
            ++i_;
            return make_number(t.number);
        case Tok::LParen: {
            ++i_;
            auto e = expr(depth + 1);
            expect(Tok::RParen, "')'");
            return e;
        }
        case Tok::Ident:
            return identifier(depth);
        default:
            fail(t, "expected an operand, found " + describe(t));
        }
    }

    ExprNodePtr identifier(int depth) {
        const Token t = next();
        if (ctx_ == ExprContext::Mean) {
            if (t.text == "x") return make_variable(0);
            if (t.text == "y") return make_variable(1);
        } else if (t.text == "t") {
            return make_variable(0);
        }
        const int n = arity(t.text);
        if (n == 0 || (is_mean_name(t.text) && ctx_ == ExprContext::Weight))
            throw ParseError(ParseErrorKind::UnknownIdentifier, t.pos + 1, t.len,
                             "unknown identifier '" + t.text + "'");
        if (peek().kind != Tok::LParen) {
            if (is_mean_name(t.text)) return make_call(t.text, {make_variable(0), make_variable(1)});
            fail(peek(), "expected '(' after function '" + t.text + "'");
        }
        ++i_;
        std::vector<ExprNodePtr> args;
        args.push_back(expr(depth + 1));
        while (peek().kind == Tok::Comma) {
            ++i_;
            args.push_back(expr(depth + 1));
        }
        if (peek().kind != Tok::RParen) {
            if (peek().kind == Tok::End || static_cast<int>(args.size()) >= n)
                fail(peek(), "expected ')', found " + describe(peek()));
            fail(peek(), "expected ',' or ')', found " + describe(peek()));
        }
        if (static_cast<int>(args.size()) != n)
            throw ParseError(ParseErrorKind::Syntax, t.pos + 1, t.len,
                             "function '" + t.text + "' takes " + std::to_string(n) +
                                 (n == 1 ? " argument" : " arguments") + ", got " +
                                 std::to_string(args.size()));
        ++i_;
        return make_call(t.text, std::move(args));
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
    ExprContext ctx_;
};

Expression parse_in(std::string_view src, ExprContext ctx) {
    Parser p(lex(src), ctx);
    return Expression(p.parse(), ctx, std::string(src));
}

[[noreturn]] void fault(const std::string& msg) { throw DomainError(msg); }

double checked(double v, const char* what) {
    if (!std::isfinite(v)) fault(std::string("non-finite result in ") + what);
    return v;
}

double power_of(double b, double e) {
    if (b < 0.0 && e != std::trunc(e)) fault("non-integer power of a negative base");
    if (b == 0.0 && e < 0.0) fault("zero raised to a negative power");
    return checked(std::pow(b, e), "power");
}

const MeanFunction& builtin_mean(std::string_view f) {
    static const MeanFunction a = make_arithmetic();
    static const MeanFunction g = make_geometric();
    static const MeanFunction h = make_harmonic();
    if (f == "A") return a;
    if (f == "G") return g;
    if (f == "H") return h;
    static const MeanFunction m = make_agm();
    return m;
}

double eval_node(const ExprNode& n, double x, double y) {
    using K = ExprNode::Kind;
    switch (n.kind) {
    case K::Number: return n.value;
    case K::Variable: return n.variable == 0 ? x : y;
    case K::Negate: return -eval_node(*n.children[0], x, y);
    case K::Binary: {
        const double a = eval_node(*n.children[0], x, y);
        const double b = eval_node(*n.children[1], x, y);
        switch (n.op) {
        case BinaryOp::Add: return checked(a + b, "addition");
        case BinaryOp::Sub: return checked(a - b, "subtraction");
        case BinaryOp::Mul: return checked(a * b, "multiplication");
        case BinaryOp::Div:
            if (b == 0.0) fault("division by zero");
            return checked(a / b, "division");
        case BinaryOp::Pow: return power_of(a, b);
        }
        break;
    }
    case K::Call: {
        const std::string& f = n.function;
        const double a = eval_node(*n.children[0], x, y);
        if (f == "sqrt") {
            if (a < 0.0) fault("sqrt of a negative number");
            return std::sqrt(a);
        }
        if (f == "log") {
            if (a <= 0.0) fault("log of a non-positive number");
            return std::log(a);
        }
        if (f == "exp") return checked(std::exp(a), "exp");
        if (f == "abs") return std::fabs(a);
        const double b = eval_node(*n.children[1], x, y);
        if (f == "min") return std::min(a, b);
        if (f == "max") return std::max(a, b);
        if (f == "pow") return power_of(a, b);
        const MeanFunction& m = builtin_mean(f);
        if (!m.domain().contains(a) || !m.domain().contains(b))
            fault(f + " is undefined at (" + std::to_string(a) + ", " + std::to_string(b) + ")");
        return checked(m(a, b), f.c_str());
    }
    }
    fault("malformed expression");
}

int precedence(const ExprNode& n) {
    using K = ExprNode::Kind;
    switch (n.kind) {
    case K::Binary:
        switch (n.op) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 2;
        case BinaryOp::Pow: return 4;
        }
        return 0;
    case K::Negate: return 3;
    default: return 5;
    }
}

std::string format_number(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

void print(const ExprNode& n, ExprContext ctx, std::string& out);

void print_wrapped(const ExprNode& n, bool wrap, ExprContext ctx, std::string& out) {
    if (wrap) out += '(';
    print(n, ctx, out);
    if (wrap) out += ')';
}

void print(const ExprNode& n, ExprContext ctx, std::string& out) {
    using K = ExprNode::Kind;
    switch (n.kind) {
    case K::Number: out += format_number(n.value); return;
    case K::Variable:
        out += ctx == ExprContext::Weight ? "t" : (n.variable == 0 ? "x" : "y");
        return;
    case K::Negate:
        out += '-';
        print_wrapped(*n.children[0], precedence(*n.children[0]) < 3, ctx, out);
        return;
    case K::Call:
        out += n.function;
        out += '(';
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (i) out += ", ";
            print(*n.children[i], ctx, out);
        }
        out += ')';
        return;
    case K::Binary: {
        const ExprNode& l = *n.children[0];
        const ExprNode& r = *n.children[1];
        if (n.op == BinaryOp::Pow) {
            print_wrapped(l, precedence(l) <= 4, ctx, out);
            out += '^';
            print_wrapped(r, precedence(r) < 3, ctx, out);
            return;
        }
        const int p = precedence(n);
        print_wrapped(l, precedence(l) < p, ctx, out);
        switch (n.op) {
        case BinaryOp::Add: out += " + "; break;
        case BinaryOp::Sub: out += " - "; break;
        case BinaryOp::Mul: out += " * "; break;
        default: out += " / "; break;
        }
        print_wrapped(r, precedence(r) <= p, ctx, out);
        return;
    }
    }
}

bool is_xy_call(const ExprNode& n) {
    return n.kind == ExprNode::Kind::Call && is_mean_name(n.function) &&
           n.children[0]->kind == ExprNode::Kind::Variable && n.children[0]->variable == 0 &&
           n.children[1]->kind == ExprNode::Kind::Variable && n.children[1]->variable == 1;
}

std::string fmt_point(double x, double y) {
    std::ostringstream os;
    os.precision(17);
    os << '(' << x << ", " << y << ')';
    return os.str();
}

} // namespace

Expression::Expression(ExprNodePtr root, ExprContext context, std::string source)
    : root_(std::move(root)), context_(context), source_(std::move(source)) {}

double Expression::evaluate(double x, double y) const { return eval_node(*root_, x, y); }

std::string Expression::to_string() const {
    std::string out;
    print(*root_, context_, out);
    return out;
}

Expression parse_mean_expr(std::string_view src) { return parse_in(src, ExprContext::Mean); }
Expression parse_weight_expr(std::string_view src) { return parse_in(src, ExprContext::Weight); }

MeanFunction make_agm() {
    const CompoundMean& c = agm();
    return MeanFunction("AGM", c.mean().domain(), [c](double x, double y) { return c(x, y); },
                        MeanTraits{true, true, true});
}

MeanExpression expr_to_mean(const Expression& e, const Interval& domain,
                            const ExprMeanOptions& options) {
    if (e.context() != ExprContext::Mean)
        throw PreconditionError("expr_to_mean needs an expression in x and y");

    const std::string name = e.to_string();
    std::optional<MeanFunction> m;
    if (is_xy_call(e.root())) {
        const MeanFunction& b = builtin_mean(e.root().function);
        if (!b.domain().contains(domain))
            throw DomainError(e.root().function + " is not defined on " + domain.to_string());
        m = b.restricted_to(domain);
    } else {
        m = MeanFunction(name, domain, [e](double x, double y) { return e.evaluate(x, y); });
    }

    MeanExpression out{*m, {}, {}};
    out.report = verify_axioms(out.mean, default_window(domain), options.samples, options.seed);
    static const char* const labels[] = {"", "i (symmetry)", "ii (betweenness)", "iii (strictness)"};
    const bool ok[] = {true, out.report.axiom_i_ok, out.report.axiom_ii_ok, out.report.axiom_iii_ok};
    for (int a = 1; a <= 3; ++a) {
        if (ok[a]) continue;
        for (const auto& c : out.report.counterexamples) {
            if (static_cast<int>(c.axiom) != a) continue;
            std::ostringstream os;
            os.precision(17);
            os << "mean '" << name << "' fails axiom " << labels[a] << " at " << fmt_point(c.x, c.y)
               << " with value " << c.value;
            out.diagnostics.push_back(os.str());
            break;
        }
    }
    for (const auto& f : out.report.evaluation_faults)
        out.diagnostics.push_back("mean '" + name + "' evaluation fault: " + f);
    return out;
}

WeightFunction expr_to_weight(const Expression& e, const Interval& domain) {
    if (e.context() != ExprContext::Weight)
        throw PreconditionError("expr_to_weight needs an expression in t");
    return WeightFunction(e.to_string(), domain, [e](double t) { return e.evaluate(t); });
}

} // namespace meanscape
