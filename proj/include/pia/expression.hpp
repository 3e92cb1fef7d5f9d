#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pia {

/// Compiled arithmetic expression in the variables x and a.
///
/// Grammar:
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | primary
///   primary := number | 'x' | 'a' | call | '(' expr ')'
///   call    := ('sinh' | 'cosh' | 'exp' | 'abs' | 'sgn' | 'sqrt') '(' expr ')'
///            | ('max' | 'min') '(' expr ',' expr ')'
///
/// sgn(0) = 1. Parsing throws ParseError carrying the byte offset of the
/// offending token. Evaluation is const and re-entrant.
class Expression {
public:
    enum class Variables { XOnly, XAndA };

    static Expression parse(std::string_view source, Variables vars = Variables::XAndA);

    double operator()(double x, double a = 0.0) const;

    const std::string& source() const noexcept { return source_; }

    enum class Op : std::uint8_t {
        Const, VarX, VarA, Add, Sub, Mul, Div, Neg,
        Sinh, Cosh, Exp, Abs, Sgn, Sqrt, Max, Min
    };
    struct Instr {
        Op op;
        double value;
    };

private:
    Expression() = default;

    std::string source_;
    std::vector<Instr> program_;  // postfix
    std::size_t max_depth_ = 0;
};

}  // namespace pia
