#include "pia/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <algorithm>

#include "pia/errors.hpp"

namespace pia {

namespace {

using Op = Expression::Op;
using Instr = Expression::Instr;

struct Function {
    std::string_view name;
    Op op;
    int arity;
};

constexpr std::array<Function, 8> kFunctions{{
    {"sinh", Op::Sinh, 1},
    {"cosh", Op::Cosh, 1},
    {"exp", Op::Exp, 1},
    {"abs", Op::Abs, 1},
    {"sgn", Op::Sgn, 1},
    {"sqrt", Op::Sqrt, 1},
    {"max", Op::Max, 2},
    {"min", Op::Min, 2},
}};

class Parser {
public:
    Parser(std::string_view src, Expression::Variables vars) : src_(src), vars_(vars) {}

    std::vector<Instr> run() {
        skip_space();
        if (pos_ == src_.size()) throw ParseError("empty expression", pos_);
        expr();
        skip_space();
        if (pos_ != src_.size()) {
            throw ParseError("unexpected '" + std::string(1, src_[pos_]) + "'", pos_);
        }
        return std::move(out_);
    }

private:
    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
    }

    void expr() {
        term();
        for (;;) {
            if (accept('+')) {
                term();
                out_.push_back({Op::Add, 0.0});
            } else if (accept('-')) {
                term();
                out_.push_back({Op::Sub, 0.0});
            } else {
                return;
            }
        }
    }

    void term() {
        unary();
        for (;;) {
            if (accept('*')) {
                unary();
                out_.push_back({Op::Mul, 0.0});
            } else if (accept('/')) {
                unary();
                out_.push_back({Op::Div, 0.0});
            } else {
                return;
            }
        }
    }

    void unary() {
        if (accept('-')) {
            unary();
            out_.push_back({Op::Neg, 0.0});
            return;
        }
        primary();
    }

    void primary() {
        skip_space();
        if (pos_ == src_.size()) throw ParseError("unexpected end of expression", pos_);
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            expr();
            expect(')');
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            identifier();
            return;
        }
        throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }

    void number() {
        const std::size_t start = pos_;
        double value = 0.0;
        const char* first = src_.data() + pos_;
        const char* last = src_.data() + src_.size();
        const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
        if (ec != std::errc() || !std::isfinite(value)) {
            throw ParseError("malformed number", start);
        }
        pos_ += static_cast<std::size_t>(ptr - first);
        out_.push_back({Op::Const, value});
    }

    void identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "x") {
            out_.push_back({Op::VarX, 0.0});
            return;
        }
        if (name == "a") {
            if (vars_ == Expression::Variables::XOnly) {
                throw ParseError("variable 'a' is not allowed here", start);
            }
            out_.push_back({Op::VarA, 0.0});
            return;
        }
        const auto fn = std::find_if(kFunctions.begin(), kFunctions.end(),
                                     [&](const Function& f) { return f.name == name; });
        if (fn == kFunctions.end()) {
            throw ParseError("unknown identifier '" + std::string(name) + "'", start);
        }
        expect('(');
        expr();
        for (int k = 1; k < fn->arity; ++k) {
            expect(',');
            expr();
        }
        expect(')');
        out_.push_back({fn->op, 0.0});
    }

    std::string_view src_;
    Expression::Variables vars_;
    std::size_t pos_ = 0;
    std::vector<Instr> out_;
};

int stack_effect(Op op) {
    switch (op) {
        case Op::Const:
        case Op::VarX:
        case Op::VarA: return 1;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div:
        case Op::Max:
        case Op::Min: return -1;
        default: return 0;
    }
}

double run_program(const std::vector<Instr>& program, double* stack, double x, double a) {
    std::size_t top = 0;
    for (const Instr& in : program) {
        switch (in.op) {
            case Op::Const: stack[top++] = in.value; break;
            case Op::VarX: stack[top++] = x; break;
            case Op::VarA: stack[top++] = a; break;
            case Op::Add: --top; stack[top - 1] += stack[top]; break;
            case Op::Sub: --top; stack[top - 1] -= stack[top]; break;
            case Op::Mul: --top; stack[top - 1] *= stack[top]; break;
            case Op::Div: --top; stack[top - 1] /= stack[top]; break;
            case Op::Max: --top; stack[top - 1] = std::max(stack[top - 1], stack[top]); break;
            case Op::Min: --top; stack[top - 1] = std::min(stack[top - 1], stack[top]); break;
            case Op::Neg: stack[top - 1] = -stack[top - 1]; break;
            case Op::Sinh: stack[top - 1] = std::sinh(stack[top - 1]); break;
            case Op::Cosh: stack[top - 1] = std::cosh(stack[top - 1]); break;
            case Op::Exp: stack[top - 1] = std::exp(stack[top - 1]); break;
            case Op::Abs: stack[top - 1] = std::abs(stack[top - 1]); break;
            case Op::Sgn: stack[top - 1] = stack[top - 1] >= 0.0 ? 1.0 : -1.0; break;
            case Op::Sqrt: stack[top - 1] = std::sqrt(stack[top - 1]); break;
        }
    }
    return stack[0];
}

}  // namespace

Expression Expression::parse(std::string_view source, Variables vars) {
    Expression e;
    e.source_ = std::string(source);
    e.program_ = Parser(source, vars).run();
    int depth = 0;
    for (const Instr& in : e.program_) {
        depth += stack_effect(in.op);
        e.max_depth_ = std::max(e.max_depth_, static_cast<std::size_t>(depth));
    }
    return e;
}

double Expression::operator()(double x, double a) const {
    constexpr std::size_t kInline = 32;
    if (max_depth_ <= kInline) {
        std::array<double, kInline> stack;
        return run_program(program_, stack.data(), x, a);
    }
    std::vector<double> stack(max_depth_);
    return run_program(program_, stack.data(), x, a);
}

}  // namespace pia
