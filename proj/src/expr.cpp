#include "ncpx/expr.hpp"

#include <cctype>
#include <utility>

#include "ncpx/engine.hpp"
#include "ncpx/errors.hpp"
#include "ncpx/primes.hpp"

namespace ncpx {

// --- Expression -------------------------------------------------------------

Expression Expression::one() {
    return Expression{};
}

Expression Expression::sum(std::vector<Expression> parts) {
    std::vector<Expression> flat;
    flat.reserve(parts.size());
    for (auto& p : parts) {
        if (p.kind_ == ExprKind::Sum)
            for (auto& c : p.children_)
                flat.push_back(std::move(c));
        else
            flat.push_back(std::move(p));
    }
    if (flat.empty())
        throw std::logic_error("Expression::sum: no parts");
    if (flat.size() == 1)
        return std::move(flat.front());
    Expression e;
    e.kind_ = ExprKind::Sum;
    e.value_ = 0;
    e.ones_ = 0;
    for (const auto& c : flat) {
        e.value_ += c.value_;
        e.ones_ += c.ones_;
    }
    e.children_ = std::move(flat);
    return e;
}

Expression Expression::product(std::vector<Expression> parts) {
    std::vector<Expression> flat;
    flat.reserve(parts.size());
    for (auto& p : parts) {
        if (p.kind_ == ExprKind::Product)
            for (auto& c : p.children_)
                flat.push_back(std::move(c));
        else
            flat.push_back(std::move(p));
    }
    if (flat.empty())
        throw std::logic_error("Expression::product: no parts");
    if (flat.size() == 1)
        return std::move(flat.front());
    Expression e;
    e.kind_ = ExprKind::Product;
    e.value_ = 1;
    e.ones_ = 0;
    for (const auto& c : flat) {
        e.value_ *= c.value_;
        e.ones_ += c.ones_;
    }
    e.children_ = std::move(flat);
    return e;
}

const bigint& evaluate(const Expression& e) {
    return e.value();
}

std::uint64_t count_ones(const Expression& e) {
    return e.ones_count();
}

// --- parsing ------------------------------------------------------------------

parse_error::parse_error(const std::string& what, std::size_t pos)
    : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expression run() {
        skip_ws();
        if (at_end())
            throw parse_error("empty expression", 0);
        Expression e = parse_sum();
        skip_ws();
        if (!at_end())
            throw parse_error(std::string("unexpected '") + peek() + "'", pos_);
        return e;
    }

private:
    // Guards against pathological '^' exponents blowing up memory; any real
    // input is far below this.
    static constexpr std::uint64_t kMaxOnes = 1'000'000;

    std::string_view text_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool atom_ahead() {
        skip_ws();
        if (at_end())
            return false;
        const char c = peek();
        return c == '(' || (c >= '0' && c <= '9');
    }

    Expression parse_sum() {
        std::vector<Expression> terms;
        terms.push_back(parse_term());
        while (true) {
            skip_ws();
            if (at_end() || peek() != '+')
                break;
            ++pos_;
            terms.push_back(parse_term());
        }
        return terms.size() == 1 ? std::move(terms.front()) : Expression::sum(std::move(terms));
    }

    Expression parse_term() {
        std::vector<Expression> factors;
        factors.push_back(parse_power());
        std::uint64_t ones = factors.front().ones_count();
        while (true) {
            skip_ws();
            if (!at_end() && peek() == '*') {
                ++pos_;
            } else if (!atom_ahead()) {
                break;  // juxtaposition only continues in front of an atom
            }
            const std::size_t here = pos_;
            factors.push_back(parse_power());
            ones += factors.back().ones_count();
            if (ones > kMaxOnes)
                throw parse_error("expression too large", here);
        }
        return factors.size() == 1 ? std::move(factors.front())
                                   : Expression::product(std::move(factors));
    }

    Expression parse_power() {
        Expression base = parse_atom();
        skip_ws();
        if (at_end() || peek() != '^')
            return base;
        const std::size_t caret = pos_++;
        skip_ws();
        const std::size_t digits = pos_;
        const std::uint64_t exp = read_integer("exponent");
        if (exp == 0)
            throw parse_error("exponent must be at least 1", digits);
        if (exp == 1)
            return base;
        if (base.ones_count() > kMaxOnes / exp)
            throw parse_error("expression too large", caret);
        std::vector<Expression> copies(exp, base);
        return Expression::product(std::move(copies));
    }

    Expression parse_atom() {
        skip_ws();
        if (at_end())
            throw parse_error("expected '1', '2', '3' or '('", pos_);
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Expression e = parse_sum();
            skip_ws();
            if (at_end() || peek() != ')')
                throw parse_error("expected ')'", pos_);
            ++pos_;
            return e;
        }
        if (c >= '0' && c <= '9') {
            const std::size_t digits = pos_;
            switch (read_integer("literal")) {
                case 1:
                    return Expression::one();
                case 2:
                    return Expression::sum({Expression::one(), Expression::one()});
                case 3:
                    return Expression::sum(
                        {Expression::one(), Expression::one(), Expression::one()});
                default:
                    throw parse_error("only the literals 1, 2 and 3 are allowed", digits);
            }
        }
        throw parse_error(std::string("unexpected '") + c + "'", pos_);
    }

    // Maximal digit run, so "23" is one (rejected) literal and never 2*3.
    std::uint64_t read_integer(const char* what) {
        if (at_end() || peek() < '0' || peek() > '9')
            throw parse_error(std::string("expected ") + what, pos_);
        std::uint64_t v = 0;
        while (!at_end() && peek() >= '0' && peek() <= '9') {
            v = v * 10 + static_cast<std::uint64_t>(peek() - '0');
            if (v > kMaxOnes)
                throw parse_error(std::string(what) + " too large", pos_);
            ++pos_;
        }
        return v;
    }
};

}  // namespace

Expression parse(std::string_view text) {
    return Parser(text).run();
}

// --- formatting ---------------------------------------------------------------

namespace {

bool is_ones_sum(const Expression& e, std::size_t count) {
    if (e.kind() != ExprKind::Sum || e.children().size() != count)
        return false;
    for (const auto& c : e.children())
        if (c.kind() != ExprKind::One)
            return false;
    return true;
}

std::string plain_str(const Expression& e) {
    switch (e.kind()) {
        case ExprKind::One:
            return "1";
        case ExprKind::Sum: {
            std::string out;
            for (std::size_t i = 0; i < e.children().size(); ++i) {
                if (i)
                    out += '+';
                out += plain_str(e.children()[i]);
            }
            return out;
        }
        case ExprKind::Product: {
            std::string out;
            for (std::size_t i = 0; i < e.children().size(); ++i) {
                if (i)
                    out += '*';
                const Expression& c = e.children()[i];
                if (c.kind() == ExprKind::Sum) {
                    out += '(';
                    out += plain_str(c);
                    out += ')';
                } else {
                    out += plain_str(c);
                }
            }
            return out;
        }
    }
    return {};
}

std::string shorthand_str(const Expression& e);

std::string shorthand_factor(const Expression& base, std::uint64_t count) {
    std::string b;
    if (base.kind() == ExprKind::One)
        b = "1";
    else if (is_ones_sum(base, 2))
        b = "2";
    else if (is_ones_sum(base, 3))
        b = "3";
    else
        b = "(" + shorthand_str(base) + ")";
    if (count >= 2) {
        b += '^';
        b += std::to_string(count);
    }
    return b;
}

std::string shorthand_str(const Expression& e) {
    switch (e.kind()) {
        case ExprKind::One:
            return "1";
        case ExprKind::Sum: {
            if (is_ones_sum(e, 2))
                return "2";
            if (is_ones_sum(e, 3))
                return "3";
            std::string out;
            for (std::size_t i = 0; i < e.children().size(); ++i) {
                if (i)
                    out += '+';
                out += shorthand_str(e.children()[i]);
            }
            return out;
        }
        case ExprKind::Product: {
            // join runs of structurally equal factors as base^count
            std::string out;
            const auto& ch = e.children();
            std::size_t i = 0;
            bool first = true;
            while (i < ch.size()) {
                std::size_t j = i + 1;
                while (j < ch.size() && ch[j] == ch[i])
                    ++j;
                if (!first)
                    out += '*';
                out += shorthand_factor(ch[i], j - i);
                first = false;
                i = j;
            }
            return out;
        }
    }
    return {};
}

}  // namespace

std::string format(const Expression& e, ExprStyle style) {
    return style == ExprStyle::plain ? plain_str(e) : shorthand_str(e);
}

// --- reconstruction -----------------------------------------------------------

namespace {

Expression reconstruct_rec(const ComplexityTable& t, std::uint64_t n) {
    if (n == 1)
        return Expression::one();
    const int target = t[n];

    // product witness first, smallest divisor
    const std::uint64_t s = isqrt(n);
    for (std::uint64_t d = 2; d <= s; ++d) {
        if (n % d == 0 && t[d] + t[n / d] == target) {
            std::vector<Expression> parts;
            parts.push_back(reconstruct_rec(t, d));
            parts.push_back(reconstruct_rec(t, n / d));
            return Expression::product(std::move(parts));
        }
    }

    // sum witness, smallest summand; the pruned cutoff bounds the search for
    // n >= 7 because the builder found the value inside it
    const std::uint64_t klim = n >= 7 ? compute_kmax(n, t[n - 1]) : n / 2;
    for (std::uint64_t k = 1; k <= klim; ++k) {
        if (t[k] + t[n - k] == target) {
            std::vector<Expression> parts;
            parts.push_back(reconstruct_rec(t, k));
            parts.push_back(reconstruct_rec(t, n - k));
            return Expression::sum(std::move(parts));
        }
    }
    throw invariant_error("reconstruct_minimal: no witnessing split for " + std::to_string(n) +
                          "; the table is corrupt");
}

}  // namespace

Expression reconstruct_minimal(const ComplexityTable& table, std::uint64_t n) {
    if (n < 1 || n > table.limit())
        throw std::out_of_range("reconstruct_minimal: " + std::to_string(n) + " outside 1.." +
                                std::to_string(table.limit()));
    return reconstruct_rec(table, n);
}

}  // namespace ncpx
