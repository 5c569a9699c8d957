#pragma once

#include <complex>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace hermite {

/**
 * @brief Syntax tree for analytic expressions in one variable x.
 *
 * Grammar: numbers, x, pi, e, + - * / ^, unary minus, parentheses and the
 * calls exp sin cos sinh cosh sech sqrt.  Precedence ^ > unary minus > * / > + -,
 * with ^ right-associative.
 */
struct ExprNode {
    enum class Kind { number, constant, variable, negate, add, sub, mul, div, pow, call };

    Kind kind = Kind::number;
    double value = 0.0;                          ///< number literal, or the constant's value
    std::string name;                            ///< constant or function name
    std::size_t offset = 0;                      ///< byte offset in the source
    std::vector<std::shared_ptr<const ExprNode>> args;
};

using ExprPtr = std::shared_ptr<const ExprNode>;

class ExprAst {
public:
    ExprAst() = default;
    explicit ExprAst(ExprPtr root) : root_(std::move(root)) {}

    [[nodiscard]] const ExprNode& root() const { return *root_; }
    [[nodiscard]] bool empty() const { return !root_; }

    /// Throws EvalError (with the offending node's offset) at poles or non-finite results.
    [[nodiscard]] std::complex<double> eval(std::complex<double> x) const;

    /// Fully parenthesized source that parses back to an identical tree.
    [[nodiscard]] std::string to_string() const;

private:
    ExprPtr root_;
};

/// Structural equality, ignoring source offsets.
[[nodiscard]] bool same_tree(const ExprNode& a, const ExprNode& b);

/// Throws ParseError with a byte offset on malformed input.
[[nodiscard]] ExprAst parse_function(std::string_view src);

}  // namespace hermite
