#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "meanscape/algebra.hpp"
#include "meanscape/axioms.hpp"
#include "meanscape/errors.hpp"
#include "meanscape/mean.hpp"

namespace meanscape {

/// Which variables an expression may reference: x, y for means; t for weights.
enum class ExprContext { Mean, Weight };

enum class ParseErrorKind { Lexical, Syntax, UnknownIdentifier };

/// Parse failure with a 1-based position into the source and the length of
/// the offending span (0 at end of input).
class ParseError : public Error {
public:
    ParseError(ParseErrorKind kind, std::size_t position, std::size_t length,
               const std::string& message);

    ParseErrorKind kind() const noexcept { return kind_; }
    std::size_t position() const noexcept { return position_; }
    std::size_t length() const noexcept { return length_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ParseErrorKind kind_;
    std::size_t position_;
    std::size_t length_;
    std::string detail_;
};

std::string_view to_string(ParseErrorKind k) noexcept;

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Number, Variable, Negate, Binary, Call };

    Kind kind = Kind::Number;
    double value = 0.0;       // Number
    int variable = 0;         // Variable: 0 = x (or t), 1 = y
    BinaryOp op = BinaryOp::Add;
    std::string function;     // Call
    std::vector<ExprNodePtr> children;
};

bool structurally_equal(const ExprNode& a, const ExprNode& b) noexcept;

/// Parsed expression tree. Immutable; evaluation is reentrant.
class Expression {
public:
    Expression(ExprNodePtr root, ExprContext context, std::string source);

    /// Evaluates in double precision. Throws DomainError on a domain fault
    /// (log or sqrt of an invalid argument, division by zero, non-integer
    /// power of a negative base, non-finite intermediate).
    double evaluate(double x, double y = 0.0) const;

    /// Canonical text with minimal parentheses; parsing it gives back an
    /// identical tree.
    std::string to_string() const;

    const ExprNode& root() const noexcept { return *root_; }
    ExprContext context() const noexcept { return context_; }
    const std::string& source() const noexcept { return source_; }

    friend bool operator==(const Expression& a, const Expression& b) noexcept {
        return a.context_ == b.context_ && structurally_equal(*a.root_, *b.root_);
    }

private:
    ExprNodePtr root_;
    ExprContext context_;
    std::string source_;
};

/// Precedence, tightest first: ^ (right-associative), unary minus, * /, + -.
/// Functions: sqrt exp log abs min max pow, and the means A G H AGM. A bare
/// A, G, H or AGM in a mean expression stands for that mean at (x, y).
Expression parse_mean_expr(std::string_view src);
Expression parse_weight_expr(std::string_view src);

struct MeanExpression {
    MeanFunction mean;
    AxiomReport report;
    std::vector<std::string> diagnostics;
};

struct ExprMeanOptions {
    std::size_t samples = 1000;
    std::uint64_t seed = 7;
};

/// Wraps a mean expression on domain x domain and attaches an axiom report
/// sampled on default_window(domain). A failing report does not block
/// construction; it shows up in `diagnostics`. An expression that is exactly
/// A, G, H or AGM at (x, y) yields the built-in mean restricted to `domain`.
MeanExpression expr_to_mean(const Expression& e, const Interval& domain,
                            const ExprMeanOptions& options = {});

WeightFunction expr_to_weight(const Expression& e, const Interval& domain);

/// The arithmetic-geometric mean as a MeanFunction named "AGM".
MeanFunction make_agm();

} // namespace meanscape
