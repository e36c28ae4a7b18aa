#pragma once

#include "rat.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace shiftlab {

// Integer expression in one free variable `n`, used by generator rules
// (interval bounds, finite-sum generators). Evaluation is exact over
// BigInt with a bit-size guard so malformed rules fail loudly instead of
// exhausting memory.
class SetExpr {
public:
    SetExpr() = default;

    static SetExpr parse(std::string_view text);
    static SetExpr constant(std::int64_t v);

    bool empty() const { return root_ == nullptr; }
    BigInt eval(std::int64_t n) const;
    std::string str() const;

    struct Node; // implementation detail, defined in setexpr.cpp

private:
    explicit SetExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;
};

} // namespace shiftlab
