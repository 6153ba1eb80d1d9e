#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ncpx/bigint.hpp"
#include "ncpx/table.hpp"

namespace ncpx {

enum class ExprKind : std::uint8_t { One, Sum, Product };

// Immutable sum-product expression over the literal 1 (the shorthands 2 and 3
// expand to 1+1 and 1+1+1 at parse time). Value and ones-count are computed
// once on construction. Sum and Product nodes always have at least two
// children; nesting a like node inside another flattens.
class Expression {
public:
    static Expression one();
    static Expression sum(std::vector<Expression> parts);
    static Expression product(std::vector<Expression> parts);

    ExprKind kind() const { return kind_; }
    const std::vector<Expression>& children() const { return children_; }
    const bigint& value() const { return value_; }
    std::uint64_t ones_count() const { return ones_; }

    // Structural equality (value and ones-count follow from it).
    friend bool operator==(const Expression& a, const Expression& b) {
        if (a.kind_ != b.kind_ || a.children_.size() != b.children_.size())
            return false;
        for (std::size_t i = 0; i < a.children_.size(); ++i)
            if (!(a.children_[i] == b.children_[i]))
                return false;
        return true;
    }

private:
    Expression() = default;

    ExprKind kind_ = ExprKind::One;
    std::vector<Expression> children_;
    bigint value_{1};
    std::uint64_t ones_ = 1;
};

struct parse_error : std::runtime_error {
    parse_error(const std::string& what, std::size_t pos);
    std::size_t position;  // 0-based offset into the input
};

// Grammar (whitespace between tokens is ignored):
//   expr  := term ('+' term)*
//   term  := power (('*' | juxtaposition) power)*
//   power := atom ('^' integer)?
//   atom  := '1' | '2' | '3' | '(' expr ')'
// Juxtaposed powers multiply, '^' binds tighter than multiplication and
// expands a^b into b copies of a (so the ones cost is b times the base's).
// Literals other than 1, 2, 3 and exponent 0 are rejected with the offending
// position.
Expression parse(std::string_view text);

const bigint& evaluate(const Expression& e);
std::uint64_t count_ones(const Expression& e);

enum class ExprStyle { plain, shorthand };

// plain uses only 1 + * ( ); shorthand writes 1+1 as 2, 1+1+1 as 3 and runs
// of equal factors as base^count. Either style reparses to an expression with
// the same value and ones-count.
std::string format(const Expression& e, ExprStyle style);

// A witnessing minimal expression for n, re-derived from the table: divisor
// splits first (smallest divisor), then sum splits (smallest summand), so the
// output is deterministic. Throws invariant_error if no split matches the
// table, which would mean the table is corrupt.
Expression reconstruct_minimal(const ComplexityTable& table, std::uint64_t n);

}  // namespace ncpx
