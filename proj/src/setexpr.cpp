#include "setexpr.hpp"

#include "error.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cctype>

namespace shiftlab {

namespace {
constexpr std::int64_t kBitCap = 4096;

void guard_size(const BigInt& v) {
    if (v != 0 && boost::multiprecision::msb(v < 0 ? BigInt(-v) : v) >= static_cast<unsigned>(kBitCap))
        fail(ErrorCode::Range, "set expression value exceeds " + std::to_string(kBitCap) + " bits");
}
} // namespace

struct SetExpr::Node {
    enum class Op { Const, Var, Add, Sub, Mul, Pow, Neg } op;
    BigInt value;
    std::shared_ptr<const Node> lhs, rhs;
};

SetExpr SetExpr::constant(std::int64_t v) {
    auto node = std::make_shared<Node>();
    node->op = Node::Op::Const;
    node->value = v;
    return SetExpr(std::move(node));
}

BigInt SetExpr::eval(std::int64_t n) const {
    if (!root_) fail(ErrorCode::Internal, "evaluating empty set expression");
    struct Eval {
        std::int64_t n;
        BigInt run(const Node& node) const {
            switch (node.op) {
            case Node::Op::Const: return node.value;
            case Node::Op::Var: return BigInt(n);
            case Node::Op::Neg: return -run(*node.lhs);
            case Node::Op::Add: {
                BigInt v = run(*node.lhs) + run(*node.rhs);
                guard_size(v);
                return v;
            }
            case Node::Op::Sub: {
                BigInt v = run(*node.lhs) - run(*node.rhs);
                guard_size(v);
                return v;
            }
            case Node::Op::Mul: {
                BigInt v = run(*node.lhs) * run(*node.rhs);
                guard_size(v);
                return v;
            }
            case Node::Op::Pow: {
                BigInt base = run(*node.lhs);
                BigInt exp = run(*node.rhs);
                if (exp < 0) fail(ErrorCode::Range, "negative exponent in set expression");
                if (exp > kBitCap) fail(ErrorCode::Range, "exponent too large in set expression");
                BigInt v = boost::multiprecision::pow(base, static_cast<unsigned>(exp));
                guard_size(v);
                return v;
            }
            }
            fail(ErrorCode::Internal, "unreachable expression op");
        }
    };
    return Eval{n}.run(*root_);
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    std::shared_ptr<const SetExpr::Node> parse() {
        auto e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail(ErrorCode::Parse, "unexpected trailing input in expression: '" + std::string(text_.substr(pos_)) + "'");
        return e;
    }

private:
    using NodePtr = std::shared_ptr<const SetExpr::Node>;
    using Node = SetExpr::Node;

    static NodePtr make(Node::Op op, NodePtr l = nullptr, NodePtr r = nullptr, BigInt v = 0) {
        auto node = std::make_shared<Node>();
        node->op = op;
        node->lhs = std::move(l);
        node->rhs = std::move(r);
        node->value = std::move(v);
        return node;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        auto lhs = term();
        for (;;) {
            if (eat('+'))
                lhs = make(Node::Op::Add, lhs, term());
            else if (eat('-'))
                lhs = make(Node::Op::Sub, lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term() {
        auto lhs = factor();
        while (eat('*')) lhs = make(Node::Op::Mul, lhs, factor());
        return lhs;
    }

    NodePtr factor() {
        auto base = atom();
        if (eat('^')) return make(Node::Op::Pow, base, factor()); // right-assoc
        return base;
    }

    NodePtr atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail(ErrorCode::Parse, "unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = expr();
            if (!eat(')')) fail(ErrorCode::Parse, "missing ')' in expression");
            return inner;
        }
        if (c == '-') {
            ++pos_;
            return make(Node::Op::Neg, atom());
        }
        if (c == 'n') {
            ++pos_;
            return make(Node::Op::Var);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt v = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                v = v * 10 + (text_[pos_] - '0');
                ++pos_;
            }
            return make(Node::Op::Const, nullptr, nullptr, v);
        }
        fail(ErrorCode::Parse, std::string("unexpected character '") + c + "' in expression");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string render(const SetExpr::Node& node);

std::string render_child(const std::shared_ptr<const SetExpr::Node>& child, bool parenthesize) {
    std::string s = render(*child);
    return parenthesize ? "(" + s + ")" : s;
}

std::string render(const SetExpr::Node& node) {
    using Op = SetExpr::Node::Op;
    switch (node.op) {
    case Op::Const: return node.value.str();
    case Op::Var: return "n";
    case Op::Neg: return "-" + render_child(node.lhs, true);
    case Op::Add: return render(*node.lhs) + " + " + render(*node.rhs);
    case Op::Sub: return render(*node.lhs) + " - " + render_child(node.rhs, node.rhs->op == Op::Add || node.rhs->op == Op::Sub);
    case Op::Mul:
        return render_child(node.lhs, node.lhs->op == Op::Add || node.lhs->op == Op::Sub) + "*" +
               render_child(node.rhs, node.rhs->op == Op::Add || node.rhs->op == Op::Sub);
    case Op::Pow: return render_child(node.lhs, node.lhs->op != Op::Const && node.lhs->op != Op::Var) + "^" +
                         render_child(node.rhs, node.rhs->op != Op::Const && node.rhs->op != Op::Var);
    }
    return "?";
}

} // namespace

SetExpr SetExpr::parse(std::string_view text) { return SetExpr(Parser(text).parse()); }

std::string SetExpr::str() const {
    if (!root_) return "";
    return render(*root_);
}

} // namespace shiftlab
