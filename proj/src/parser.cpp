#include "cellcheck/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>

#include "cellcheck/formula_ops.hpp"

namespace cellcheck {

// ---------------------------------------------------------------------------
// AST builders and tables

Expr number(double v) { return Expr{NumberLit{v}}; }
Expr text_lit(std::string s) { return Expr{TextLit{std::move(s)}}; }
Expr bool_lit(bool b) { return Expr{BoolLit{b}}; }
Expr ref(CellAddress a, bool col_abs, bool row_abs) {
    return Expr{CellRef{std::move(a), col_abs, row_abs}};
}
Expr range(CellRef a, CellRef b) {
    if (a.address.column > b.address.column) {
        std::swap(a.address.column, b.address.column);
        std::swap(a.col_absolute, b.col_absolute);
    }
    if (a.address.row > b.address.row) {
        std::swap(a.address.row, b.address.row);
        std::swap(a.row_absolute, b.row_absolute);
    }
    return Expr{RangeRef{std::move(a), std::move(b)}};
}
Expr unary(UnaryOp op, Expr operand) { return Expr{Unary{op, std::move(operand)}}; }
Expr binary(BinaryOp op, Expr left, Expr right) {
    return Expr{Binary{op, std::move(left), std::move(right)}};
}
Expr call(Function f, std::vector<Expr> args) { return Expr{FuncCall{f, std::move(args)}}; }

namespace {

struct FunctionEntry {
    std::string_view name;
    Function function;
};

constexpr FunctionEntry kFunctions[] = {
    {"SUM", Function::Sum},     {"AVG", Function::Avg},     {"AVERAGE", Function::Avg},
    {"COUNT", Function::Count}, {"MIN", Function::Min},     {"MAX", Function::Max},
    {"IF", Function::If},       {"ROUND", Function::Round}, {"ABS", Function::Abs},
};

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

std::string_view function_name(Function f) {
    for (const auto& e : kFunctions) {
        if (e.function == f) return e.name;
    }
    return "?";
}

std::optional<Function> lookup_function(std::string_view name) {
    const std::string key = upper(name);
    for (const auto& e : kFunctions) {
        if (e.name == key) return e.function;
    }
    return std::nullopt;
}

bool is_aggregate(Function f) {
    switch (f) {
        case Function::Sum:
        case Function::Avg:
        case Function::Count:
        case Function::Min:
        case Function::Max:
            return true;
        default:
            return false;
    }
}

std::string_view operator_symbol(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::Pow: return "^";
        case BinaryOp::Concat: return "&";
        case BinaryOp::Eq: return "=";
        case BinaryOp::Ne: return "<>";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
    }
    return "?";
}

std::string_view operator_symbol(UnaryOp op) { return op == UnaryOp::Neg ? "-" : "+"; }

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Number, String, Bool, Ref, Func, LParen, RParen, Sep, Colon, Op, End };

struct Token {
    Tok kind = Tok::End;
    std::size_t pos = 0;  // 0-based offset into the formula text
    std::string text;     // operator symbol, string literal, or function name
    double number = 0;
    bool boolean = false;
    CellRef cell;
    bool has_sheet = false;
    Function function = Function::Sum;
};

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '$';
}

class Lexer {
public:
    Lexer(std::string_view text, std::string_view sheet) : text_(text), sheet_(sheet) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        pos_ = 1;  // skip '='
        for (;;) {
            skip_space();
            if (pos_ >= text_.size()) {
                out.push_back(Token{Tok::End, pos_});
                return out;
            }
            out.push_back(next());
        }
    }

private:
    [[noreturn]] void fail(FormulaError::Kind kind, std::size_t at, const std::string& msg) const {
        throw FormulaError(kind, at + 1, msg);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    Token next() {
        const std::size_t start = pos_;
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
            return lex_number();
        }
        if (c == '"') return lex_string();
        if (c == '\'') return lex_quoted_sheet_ref();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '$' || c == '_') return lex_word();

        auto simple = [&](Tok kind, std::size_t len) {
            Token t{kind, start};
            t.text = std::string(text_.substr(start, len));
            pos_ += len;
            return t;
        };
        switch (c) {
            case '(': return simple(Tok::LParen, 1);
            case ')': return simple(Tok::RParen, 1);
            case ',':
            case ';': return simple(Tok::Sep, 1);
            case ':': return simple(Tok::Colon, 1);
            case '+':
            case '-':
            case '*':
            case '/':
            case '^':
            case '&':
            case '=': return simple(Tok::Op, 1);
            case '<':
                if (peek(1) == '=' || peek(1) == '>') return simple(Tok::Op, 2);
                return simple(Tok::Op, 1);
            case '>':
                if (peek(1) == '=') return simple(Tok::Op, 2);
                return simple(Tok::Op, 1);
            default:
                fail(FormulaError::Kind::Syntax, start,
                     std::string("unexpected character '") + c + "'");
        }
    }

    Token lex_number() {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (peek() == '.') {
            ++pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        }
        if (peek() == 'e' || peek() == 'E') {
            std::size_t save = pos_;
            ++pos_;
            if (peek() == '+' || peek() == '-') ++pos_;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            } else {
                pos_ = save;
            }
        }
        Token t{Tok::Number, start};
        const char* first = text_.data() + start;
        const char* last = text_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, t.number);
        if (ec != std::errc() || ptr != last) {
            fail(FormulaError::Kind::Syntax, start, "malformed number");
        }
        if (is_word_char(peek()) && peek() != '.') {
            fail(FormulaError::Kind::Syntax, pos_, "malformed number or reference");
        }
        return t;
    }

    Token lex_string() {
        const std::size_t start = pos_;
        ++pos_;
        Token t{Tok::String, start};
        for (;;) {
            if (pos_ >= text_.size()) {
                fail(FormulaError::Kind::Syntax, start, "unterminated string literal");
            }
            char c = text_[pos_++];
            if (c == '"') {
                if (peek() == '"') {
                    t.text += '"';
                    ++pos_;
                    continue;
                }
                return t;
            }
            t.text += c;
        }
    }

    Token lex_quoted_sheet_ref() {
        const std::size_t start = pos_;
        ++pos_;
        std::string name;
        for (;;) {
            if (pos_ >= text_.size()) fail(FormulaError::Kind::Syntax, start, "unterminated sheet name");
            char c = text_[pos_++];
            if (c == '\'') {
                if (peek() == '\'') {
                    name += '\'';
                    ++pos_;
                    continue;
                }
                break;
            }
            name += c;
        }
        if (peek() != '!' || name.empty()) {
            fail(FormulaError::Kind::Syntax, start, "expected '!' after quoted sheet name");
        }
        ++pos_;
        return lex_ref_after_sheet(start, name);
    }

    Token lex_word() {
        const std::size_t start = pos_;
        while (is_word_char(peek())) ++pos_;
        std::string_view word = text_.substr(start, pos_ - start);

        if (peek() == '!') {
            ++pos_;
            return lex_ref_after_sheet(start, std::string(word));
        }

        std::size_t look = pos_;
        while (look < text_.size() && std::isspace(static_cast<unsigned char>(text_[look]))) ++look;
        if (look < text_.size() && text_[look] == '(') {
            auto fn = lookup_function(word);
            if (!fn) {
                fail(FormulaError::Kind::Name, start, "unknown function '" + std::string(word) + "'");
            }
            Token t{Tok::Func, start};
            t.text = upper(word);
            t.function = *fn;
            return t;
        }

        const std::string up = upper(word);
        if (up == "TRUE" || up == "FALSE") {
            Token t{Tok::Bool, start};
            t.boolean = up == "TRUE";
            return t;
        }

        if (auto cell = match_ref(word, start, sheet_)) {
            Token t{Tok::Ref, start};
            t.cell = *cell;
            return t;
        }
        fail(FormulaError::Kind::Name, start, "unknown name '" + std::string(word) + "'");
    }

    Token lex_ref_after_sheet(std::size_t start, const std::string& sheet) {
        const std::size_t ref_start = pos_;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '$') ++pos_;
        std::string_view word = text_.substr(ref_start, pos_ - ref_start);
        auto cell = match_ref(word, ref_start, sheet);
        if (!cell) fail(FormulaError::Kind::Syntax, ref_start, "bad reference after sheet name");
        Token t{Tok::Ref, start};
        t.cell = *cell;
        t.has_sheet = true;
        return t;
    }

    // $?LETTERS$?DIGITS; returns nullopt when the shape does not match,
    // throws when the shape matches but the coordinates are out of range.
    std::optional<CellRef> match_ref(std::string_view w, std::size_t at, std::string_view sheet) const {
        std::size_t i = 0;
        CellRef r;
        if (i < w.size() && w[i] == '$') {
            r.col_absolute = true;
            ++i;
        }
        std::size_t letters = i;
        while (i < w.size() && std::isalpha(static_cast<unsigned char>(w[i]))) ++i;
        if (i == letters) return std::nullopt;
        std::string_view col = w.substr(letters, i - letters);
        if (i < w.size() && w[i] == '$') {
            r.row_absolute = true;
            ++i;
        }
        std::size_t digits = i;
        while (i < w.size() && std::isdigit(static_cast<unsigned char>(w[i]))) ++i;
        if (i == digits || i != w.size()) return std::nullopt;
        std::string_view row = w.substr(digits);
        if (col.size() > 3) return std::nullopt;
        try {
            r.address = parse_address(std::string(col) + std::string(row), sheet);
        } catch (const AddressError& e) {
            fail(FormulaError::Kind::Syntax, at, std::string("bad reference: ") + e.what());
        }
        return r;
    }

    std::string_view text_;
    std::string_view sheet_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Pratt parser

struct BindingPower {
    int left;
    int right;
    BinaryOp op;
};

constexpr int kUnaryBp = 9;

std::optional<BindingPower> infix_binding(const Token& t) {
    if (t.kind != Tok::Op) return std::nullopt;
    const std::string& s = t.text;
    if (s == "=") return BindingPower{1, 2, BinaryOp::Eq};
    if (s == "<>") return BindingPower{1, 2, BinaryOp::Ne};
    if (s == "<") return BindingPower{1, 2, BinaryOp::Lt};
    if (s == "<=") return BindingPower{1, 2, BinaryOp::Le};
    if (s == ">") return BindingPower{1, 2, BinaryOp::Gt};
    if (s == ">=") return BindingPower{1, 2, BinaryOp::Ge};
    if (s == "&") return BindingPower{3, 4, BinaryOp::Concat};
    if (s == "+") return BindingPower{5, 6, BinaryOp::Add};
    if (s == "-") return BindingPower{5, 6, BinaryOp::Sub};
    if (s == "*") return BindingPower{7, 8, BinaryOp::Mul};
    if (s == "/") return BindingPower{7, 8, BinaryOp::Div};
    if (s == "^") return BindingPower{11, 11, BinaryOp::Pow};
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Expr parse() {
        Expr e = expression(0);
        if (peek().kind != Tok::End) fail(peek(), "unexpected '" + describe(peek()) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const Token& t, const std::string& msg) const {
        throw FormulaError(FormulaError::Kind::Syntax, t.pos + 1, msg);
    }

    static std::string describe(const Token& t) {
        switch (t.kind) {
            case Tok::End: return "end of formula";
            case Tok::Number: return format_number(t.number);
            case Tok::Ref: return t.cell.address.to_string();
            case Tok::String: return "\"" + t.text + "\"";
            case Tok::Bool: return t.boolean ? "TRUE" : "FALSE";
            default: return t.text;
        }
    }

    const Token& peek() const { return toks_[i_]; }
    const Token& take() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

    void expect(Tok kind, const char* what) {
        if (peek().kind != kind) {
            fail(peek(), std::string("expected ") + what + " but found " + describe(peek()));
        }
        take();
    }

    Expr expression(int min_bp) {
        Expr lhs = prefix();
        for (;;) {
            auto bp = infix_binding(peek());
            if (!bp || bp->left < min_bp) break;
            take();
            Expr rhs = expression(bp->right);
            lhs = binary(bp->op, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Expr prefix() {
        const Token& t = take();
        switch (t.kind) {
            case Tok::Number: return number(t.number);
            case Tok::String: return text_lit(t.text);
            case Tok::Bool: return bool_lit(t.boolean);
            case Tok::Ref: return reference(t);
            case Tok::Func: return function_call(t);
            case Tok::LParen: {
                Expr inner = expression(0);
                expect(Tok::RParen, "')'");
                return inner;
            }
            case Tok::Op:
                if (t.text == "-") return unary(UnaryOp::Neg, expression(kUnaryBp));
                if (t.text == "+") return unary(UnaryOp::Pos, expression(kUnaryBp));
                fail(t, "operator '" + t.text + "' is missing its left operand");
            case Tok::End:
                fail(t, "unexpected end of formula");
            default:
                fail(t, "unexpected '" + describe(t) + "'");
        }
    }

    Expr reference(const Token& first) {
        if (peek().kind != Tok::Colon) return Expr{first.cell};
        take();
        const Token& second = take();
        if (second.kind != Tok::Ref) fail(second, "expected a cell reference after ':'");
        CellRef end = second.cell;
        if (second.has_sheet && end.address.sheet != first.cell.address.sheet) {
            fail(second, "range corners must be on the same sheet");
        }
        end.address.sheet = first.cell.address.sheet;
        return range(first.cell, end);
    }

    Expr function_call(const Token& name) {
        expect(Tok::LParen, "'('");
        std::vector<Expr> args;
        if (peek().kind == Tok::RParen) {
            take();
            return call(name.function, std::move(args));
        }
        for (;;) {
            args.push_back(expression(0));
            if (peek().kind == Tok::Sep) {
                take();
                continue;
            }
            expect(Tok::RParen, "')' or argument separator");
            return call(name.function, std::move(args));
        }
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

}  // namespace

Expr parse_formula(std::string_view text, std::string_view sheet) {
    if (text.empty() || text.front() != '=') {
        throw FormulaError(FormulaError::Kind::Syntax, 1, "formula must start with '='");
    }
    return Parser(Lexer(text, sheet).run()).parse();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

int precedence(const Expr& e) {
    if (const auto* b = e.as<Binary>()) {
        switch (b->op) {
            case BinaryOp::Eq:
            case BinaryOp::Ne:
            case BinaryOp::Lt:
            case BinaryOp::Le:
            case BinaryOp::Gt:
            case BinaryOp::Ge: return 1;
            case BinaryOp::Concat: return 2;
            case BinaryOp::Add:
            case BinaryOp::Sub: return 3;
            case BinaryOp::Mul:
            case BinaryOp::Div: return 4;
            case BinaryOp::Pow: return 6;
        }
    }
    if (e.is<Unary>()) return 5;
    return 7;
}

void print_ref(std::string& out, const CellRef& r, std::string_view context, bool with_sheet) {
    if (with_sheet && !r.address.sheet.empty() && r.address.sheet != context) {
        out += quote_sheet_name(r.address.sheet);
        out += '!';
    }
    if (r.col_absolute) out += '$';
    out += column_to_letters(r.address.column);
    if (r.row_absolute) out += '$';
    out += std::to_string(r.address.row);
}

void print(std::string& out, const Expr& e, std::string_view ctx);

void print_child(std::string& out, const Expr& child, bool parens, std::string_view ctx) {
    if (parens) out += '(';
    print(out, child, ctx);
    if (parens) out += ')';
}

void print(std::string& out, const Expr& e, std::string_view ctx) {
    struct Visitor {
        std::string& out;
        std::string_view ctx;
        void operator()(const NumberLit& n) const { out += format_number(n.value); }
        void operator()(const TextLit& t) const {
            out += '"';
            for (char c : t.text) {
                if (c == '"') out += '"';
                out += c;
            }
            out += '"';
        }
        void operator()(const BoolLit& b) const { out += b.value ? "TRUE" : "FALSE"; }
        void operator()(const CellRef& r) const { print_ref(out, r, ctx, true); }
        void operator()(const RangeRef& r) const {
            print_ref(out, r.start, ctx, true);
            out += ':';
            print_ref(out, r.end, ctx, false);
        }
        void operator()(const Unary& u) const {
            out += operator_symbol(u.op);
            print_child(out, *u.operand, precedence(*u.operand) < 5, ctx);
        }
        void operator()(const Binary& b) const {
            const int p = precedence(Expr{b});
            const bool right_assoc = b.op == BinaryOp::Pow;
            const int lp = precedence(*b.left);
            const int rp = precedence(*b.right);
            print_child(out, *b.left, lp < p || (right_assoc && lp == p), ctx);
            out += operator_symbol(b.op);
            // A unary right operand re-parses unambiguously without parentheses.
            const bool right_parens = !b.right->is<Unary>() && (rp < p || (!right_assoc && rp == p));
            print_child(out, *b.right, right_parens, ctx);
        }
        void operator()(const FuncCall& f) const {
            out += function_name(f.function);
            out += '(';
            for (std::size_t i = 0; i < f.args.size(); ++i) {
                if (i > 0) out += ',';
                print(out, f.args[i], ctx);
            }
            out += ')';
        }
    };
    std::visit(Visitor{out, ctx}, e.node);
}

}  // namespace

std::string print_formula(const Expr& e, std::string_view context_sheet) {
    std::string out = "=";
    print(out, e, context_sheet);
    return out;
}

// ---------------------------------------------------------------------------
// Whole-workbook check

SyntaxReport syntax_check(const Workbook& wb) {
    SyntaxReport report;
    wb.for_each_cell([&](const Cell& cell) {
        if (!cell.is_formula()) return;
        try {
            Expr e = parse_formula(cell.formula().text, cell.address.sheet);
            (void)references_of(e);
        } catch (const FormulaError& err) {
            report.errors.push_back({cell.address, err.what(), err.position()});
        }
    });
    return report;
}

}  // namespace cellcheck
