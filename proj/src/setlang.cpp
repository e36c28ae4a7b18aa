#include "setlang.hpp"

#include "catalog.hpp"
#include "error.hpp"

#include <algorithm>
#include <cctype>

namespace shiftlab {

namespace {

class LineParser {
public:
    LineParser(std::string_view text, int line_no, const ParsedSets& env) : text_(text), line_(line_no), env_(env) {}

    IntSet parse_rule_to_end() {
        IntSet set = rule();
        skip_ws();
        if (pos_ != text_.size()) err("unexpected trailing input '" + std::string(text_.substr(pos_)) + "'");
        return set;
    }

private:
    [[noreturn]] void err(const std::string& message) const {
        fail(ErrorCode::Parse, "line " + std::to_string(line_) + ": " + message);
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

    void expect(char c) {
        if (!eat(c)) err(std::string("expected '") + c + "'");
    }

    bool peek_word(std::string_view w) {
        skip_ws();
        return text_.substr(pos_, w.size()) == w;
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
        if (start == pos_) err("expected identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

    std::int64_t integer() {
        skip_ws();
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) err("expected integer");
        std::int64_t v = std::stoll(std::string(text_.substr(start, pos_ - start)));
        return neg ? -v : v;
    }

    Elems int_list_braced() {
        expect('{');
        Elems out;
        skip_ws();
        if (eat('}')) return out;
        out.push_back(integer());
        while (eat(',')) out.push_back(integer());
        expect('}');
        return out;
    }

    // Reads a balanced-parenthesis-free chunk up to the next top-level ',' or
    // closing char, for embedded arithmetic expressions.
    std::string expr_chunk(std::string_view stoppers) {
        skip_ws();
        int depth = 0;
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) break;
                --depth;
            }
            if (depth == 0 && stoppers.find(c) != std::string_view::npos) break;
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    IntSet rule() {
        skip_ws();
        std::size_t mark = pos_;
        std::string head = ident();
        if (head == "catalog") {
            expect('(');
            std::string name = ident();
            if (eat('(')) { // grid(3)
                std::int64_t arg = integer();
                expect(')');
                name += "(" + std::to_string(arg) + ")";
            }
            expect(')');
            return example_set_catalog(name);
        }
        if (head == "finite") {
            Elems elems = int_list_braced();
            return IntSet::finite(std::move(elems));
        }
        if (head == "intervals") {
            expect('(');
            std::int64_t from = 1;
            if (peek_word("n")) {
                skip_ws();
                std::size_t save = pos_;
                std::string var = ident();
                if (var != "n") err("interval index variable must be 'n'");
                if (peek_word("from")) {
                    ident();
                    from = integer();
                    expect(':');
                } else {
                    pos_ = save; // bare expression starting with n
                }
            }
            expect('[');
            SetExpr lo = SetExpr::parse(expr_chunk(","));
            expect(',');
            SetExpr hi = SetExpr::parse(expr_chunk("]"));
            expect(']');
            expect(')');
            return IntSet::interval_union(std::move(lo), std::move(hi), from);
        }
        if (head == "grid") {
            expect('(');
            std::int64_t mod = 0, min = 0;
            Elems residues;
            bool have_mod = false, have_res = false;
            do {
                std::string key = ident();
                expect('=');
                if (key == "mod") {
                    mod = integer();
                    have_mod = true;
                } else if (key == "residues") {
                    residues = int_list_braced();
                    have_res = true;
                } else if (key == "min") {
                    min = integer();
                } else {
                    err("unknown grid parameter '" + key + "'");
                }
            } while (eat(','));
            expect(')');
            if (!have_mod || !have_res) err("grid needs mod= and residues=");
            return IntSet::arithmetic_grid(mod, std::move(residues), min);
        }
        if (head == "finitesums") {
            expect('(');
            SetExpr gen = SetExpr::parse(expr_chunk(",)"));
            int depth = 20;
            if (eat(',')) {
                std::string key = ident();
                expect('=');
                if (key != "depth") err("unknown finitesums parameter '" + key + "'");
                depth = static_cast<int>(integer());
            }
            expect(')');
            return IntSet::finite_sums(std::move(gen), depth);
        }
        if (head == "shift") {
            expect('(');
            IntSet base = rule_ref();
            expect(',');
            std::int64_t offset = integer();
            expect(')');
            return base.shifted(offset);
        }
        if (head == "complement") {
            expect('(');
            IntSet base = rule_ref();
            expect(')');
            return base.complemented();
        }
        if (head == "union" || head == "intersect") {
            expect('(');
            std::vector<IntSet> members;
            members.push_back(rule_ref());
            while (eat(',')) members.push_back(rule_ref());
            expect(')');
            return head == "union" ? IntSet::set_union(std::move(members)) : IntSet::set_intersection(std::move(members));
        }
        if (head == "diffset") {
            expect('(');
            IntSet base = rule_ref();
            std::int64_t within = 100000;
            if (eat(',')) {
                std::string key = ident();
                expect('=');
                if (key != "within") err("unknown diffset parameter '" + key + "'");
                within = integer();
            }
            expect(')');
            return base.difference_set(within);
        }
        // Not a constructor: treat as a reference to an earlier definition.
        pos_ = mark;
        std::string name = ident();
        auto it = env_.by_name.find(name);
        if (it == env_.by_name.end()) err("unknown set name '" + name + "'");
        return it->second;
    }

    IntSet rule_ref() { return rule(); }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_;
    const ParsedSets& env_;
};

} // namespace

ParsedSets parse_set_description(std::string_view text) {
    ParsedSets out;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        auto hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected 'name = rule'");
        std::string name(line.substr(first, eq - first));
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
        if (name.empty() || !std::all_of(name.begin(), name.end(), [](char c) {
                return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
            }))
            fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": bad set name '" + name + "'");
        IntSet set = LineParser(line.substr(eq + 1), line_no, out).parse_rule_to_end();
        set.with_id(name);
        if (out.by_name.count(name))
            fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": duplicate set name '" + name + "'");
        out.by_name.emplace(name, set);
        out.order.push_back(name);
    }
    return out;
}

IntSet parse_set_selection(std::string_view text, const std::string& name) {
    ParsedSets sets = parse_set_description(text);
    if (sets.order.empty()) fail(ErrorCode::Parse, "set description defines no sets");
    const std::string& key = name.empty() ? sets.order.back() : name;
    auto it = sets.by_name.find(key);
    if (it == sets.by_name.end()) fail(ErrorCode::UnknownName, "set '" + key + "' not defined in description");
    return it->second;
}

} // namespace shiftlab
