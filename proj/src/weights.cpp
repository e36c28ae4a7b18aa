#include "weights.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace shiftlab {

std::string to_string(Side side) { return side == Side::Unilateral ? "uni" : "bi"; }

SpaceKind SpaceKind::lp(Rat p, Side side) {
    if (p < Rat(1)) fail(ErrorCode::InvalidArgument, "lp space needs p >= 1");
    return {Base::Lp, std::move(p), side};
}

SpaceKind SpaceKind::parse(const std::string& text, Side side) {
    if (text == "c0") return c0(side);
    if (text.rfind("lp:", 0) == 0) return lp(Rat::parse(text.substr(3)), side);
    fail(ErrorCode::InvalidArgument, "unknown space '" + text + "' (expected c0 or lp:<p>)");
}

std::string SpaceKind::str() const {
    if (base == Base::C0) return "c0";
    return "lp:" + p.str();
}

WeightSeq WeightSeq::dyadic(Side side, std::int64_t lo, std::vector<std::int64_t> exponents) {
    if (side == Side::Unilateral && lo != 0) fail(ErrorCode::InvalidArgument, "unilateral weights must start at index 0");
    if (side == Side::Bilateral && (lo > 0 || lo + static_cast<std::int64_t>(exponents.size()) - 1 < 0))
        fail(ErrorCode::InvalidArgument, "bilateral weights must cover index 0");
    if (exponents.empty()) fail(ErrorCode::InvalidArgument, "weight sequence cannot be empty");
    WeightSeq w;
    w.side_ = side;
    w.dyadic_ = true;
    w.lo_ = lo;
    w.exps_ = std::move(exponents);
    return w;
}

WeightSeq WeightSeq::rational(Side side, std::int64_t lo, std::vector<Rat> values) {
    if (side == Side::Unilateral && lo != 0) fail(ErrorCode::InvalidArgument, "unilateral weights must start at index 0");
    if (side == Side::Bilateral && (lo > 0 || lo + static_cast<std::int64_t>(values.size()) - 1 < 0))
        fail(ErrorCode::InvalidArgument, "bilateral weights must cover index 0");
    if (values.empty()) fail(ErrorCode::InvalidArgument, "weight sequence cannot be empty");
    for (const Rat& v : values)
        if (v.sign() <= 0) fail(ErrorCode::InvalidArgument, "weights must be strictly positive");
    WeightSeq w;
    w.side_ = side;
    w.dyadic_ = false;
    w.lo_ = lo;
    w.vals_ = std::move(values);
    return w;
}

void WeightSeq::check_range(std::int64_t n) const {
    if (n < lo_ || n > hi())
        fail(ErrorCode::Range, "weight index " + std::to_string(n) + " outside [" + std::to_string(lo_) + ", " +
                                   std::to_string(hi()) + "]");
}

std::int64_t WeightSeq::exponent_at(std::int64_t n) const {
    check_range(n);
    if (!dyadic_) fail(ErrorCode::InvalidArgument, "exponent_at on a rational weight sequence");
    return exps_[static_cast<std::size_t>(n - lo_)];
}

Rat WeightSeq::value_at(std::int64_t n) const {
    check_range(n);
    if (dyadic_) return Rat::pow2(exps_[static_cast<std::size_t>(n - lo_)]);
    return vals_[static_cast<std::size_t>(n - lo_)];
}

Rat WeightSeq::sup_weight() const {
    if (dyadic_) return Rat::pow2(*std::max_element(exps_.begin(), exps_.end()));
    Rat best = vals_.front();
    for (const Rat& v : vals_)
        if (v > best) best = v;
    return best;
}

Rat WeightSeq::sup_inverse_weight() const {
    if (dyadic_) return Rat::pow2(-*std::min_element(exps_.begin(), exps_.end()));
    Rat smallest = vals_.front();
    for (const Rat& v : vals_)
        if (v < smallest) smallest = v;
    return Rat(1) / smallest;
}

WeightSeq WeightSeq::from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string header;
    if (!std::getline(in, header)) fail(ErrorCode::Parse, "weight file: missing header");
    Side side = Side::Unilateral;
    bool dyadic = true;
    bool have_side = false, have_repr = false;
    std::istringstream hs(header);
    std::string tok;
    while (hs >> tok) {
        if (tok == "side=uni") {
            side = Side::Unilateral;
            have_side = true;
        } else if (tok == "side=bi") {
            side = Side::Bilateral;
            have_side = true;
        } else if (tok == "repr=dyadic") {
            dyadic = true;
            have_repr = true;
        } else if (tok == "repr=rational") {
            dyadic = false;
            have_repr = true;
        } else {
            fail(ErrorCode::Parse, "weight file: unknown header token '" + tok + "'");
        }
    }
    if (!have_side || !have_repr) fail(ErrorCode::Parse, "weight file: header must set side= and repr=");

    std::map<std::int64_t, std::string> rows;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::int64_t index;
        std::string value;
        if (!(ls >> index)) continue; // blank
        if (!(ls >> value))
            fail(ErrorCode::Parse, "weight file line " + std::to_string(line_no) + ": missing value");
        if (!rows.emplace(index, value).second)
            fail(ErrorCode::Parse, "weight file line " + std::to_string(line_no) + ": duplicate index");
    }
    if (rows.empty()) fail(ErrorCode::Parse, "weight file: no entries");
    std::int64_t lo = rows.begin()->first;
    std::int64_t hi = rows.rbegin()->first;
    if (hi - lo + 1 != static_cast<std::int64_t>(rows.size()))
        fail(ErrorCode::Parse, "weight file: indices must be contiguous");
    if (dyadic) {
        std::vector<std::int64_t> exps;
        exps.reserve(rows.size());
        for (auto& [idx, val] : rows) {
            try {
                std::size_t used = 0;
                exps.push_back(std::stoll(val, &used));
                if (used != val.size()) throw std::invalid_argument(val);
            } catch (const std::exception&) {
                fail(ErrorCode::Parse, "weight file: bad exponent '" + val + "'");
            }
        }
        return WeightSeq::dyadic(side, lo, std::move(exps));
    }
    std::vector<Rat> vals;
    vals.reserve(rows.size());
    for (auto& [idx, val] : rows) vals.push_back(Rat::parse(val));
    return WeightSeq::rational(side, lo, std::move(vals));
}

std::string WeightSeq::to_text() const {
    std::ostringstream out;
    out << "side=" << to_string(side_) << " repr=" << (dyadic_ ? "dyadic" : "rational") << "\n";
    for (std::int64_t n = lo_; n <= hi(); ++n) {
        out << n << ' ';
        if (dyadic_)
            out << exps_[static_cast<std::size_t>(n - lo_)];
        else
            out << vals_[static_cast<std::size_t>(n - lo_)].str();
        out << '\n';
    }
    return out.str();
}

ProductTable ProductTable::build(const WeightSeq& w) { return build(w, w.lo(), w.hi()); }

ProductTable ProductTable::build(const WeightSeq& w, std::int64_t lo, std::int64_t hi) {
    if (lo < w.lo() || hi > w.hi() || lo > hi) fail(ErrorCode::Range, "product table range outside weight range");
    if (w.side() == Side::Unilateral && lo != 0) fail(ErrorCode::Range, "unilateral product table must start at 0");
    if (w.side() == Side::Bilateral && (lo > 0 || hi < 0)) fail(ErrorCode::Range, "bilateral product table must cover 0");
    ProductTable t;
    t.side_ = w.side();
    t.dyadic_ = w.is_dyadic();
    t.lo_ = lo;
    t.count_ = static_cast<std::size_t>(hi - lo + 1);
    // E(n) accumulates weight indices 1..n (or n+1..0 negated); note the
    // weight at index 0 never participates.
    if (t.dyadic_) {
        t.cum_exp_.assign(t.count_, 0);
        auto at = [&](std::int64_t n) -> std::int64_t& { return t.cum_exp_[static_cast<std::size_t>(n - lo)]; };
        at(0) = 0;
        for (std::int64_t n = 1; n <= hi; ++n) at(n) = at(n - 1) + w.exponent_at(n);
        for (std::int64_t n = -1; n >= lo; --n) at(n) = at(n + 1) - w.exponent_at(n + 1);
    } else {
        t.cum_val_.assign(t.count_, Rat(1));
        auto at = [&](std::int64_t n) -> Rat& { return t.cum_val_[static_cast<std::size_t>(n - lo)]; };
        at(0) = Rat(1);
        for (std::int64_t n = 1; n <= hi; ++n) at(n) = at(n - 1) * w.value_at(n);
        for (std::int64_t n = -1; n >= lo; --n) at(n) = at(n + 1) / w.value_at(n + 1);
    }
    return t;
}

void ProductTable::check(std::int64_t n) const {
    if (n < lo_ || n > hi())
        fail(ErrorCode::Range, "product table index " + std::to_string(n) + " outside [" + std::to_string(lo_) +
                                   ", " + std::to_string(hi()) + "]");
}

std::int64_t ProductTable::exponent(std::int64_t n) const {
    check(n);
    if (!dyadic_) fail(ErrorCode::InvalidArgument, "exponent on a rational product table");
    return cum_exp_[static_cast<std::size_t>(n - lo_)];
}

Rat ProductTable::product(std::int64_t n) const {
    check(n);
    if (dyadic_) return Rat::pow2(cum_exp_[static_cast<std::size_t>(n - lo_)]);
    return cum_val_[static_cast<std::size_t>(n - lo_)];
}

std::int64_t ProductTable::forward_exp(std::int64_t j, std::int64_t n) const {
    if (n < 0) fail(ErrorCode::InvalidArgument, "window length must be >= 0");
    return exponent(j + n) - exponent(j);
}

Rat ProductTable::forward(std::int64_t j, std::int64_t n) const {
    if (n < 0) fail(ErrorCode::InvalidArgument, "window length must be >= 0");
    if (dyadic_) return Rat::pow2(forward_exp(j, n));
    return product(j + n) / product(j);
}

std::int64_t ProductTable::backward_exp(std::int64_t j, std::int64_t n) const {
    if (n < 0) fail(ErrorCode::InvalidArgument, "window length must be >= 0");
    return exponent(j) - exponent(j - n);
}

Rat ProductTable::backward(std::int64_t j, std::int64_t n) const {
    if (n < 0) fail(ErrorCode::InvalidArgument, "window length must be >= 0");
    if (dyadic_) return Rat::pow2(backward_exp(j, n));
    return product(j) / product(j - n);
}

nlohmann::json ProductTable::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (std::int64_t n = lo_; n <= hi(); ++n) {
        if (dyadic_)
            rows.push_back({{"n", n}, {"exponent", cum_exp_[static_cast<std::size_t>(n - lo_)]}});
        else
            rows.push_back({{"n", n}, {"product", cum_val_[static_cast<std::size_t>(n - lo_)].str()}});
    }
    return nlohmann::json{{"side", to_string(side_)}, {"repr", dyadic_ ? "dyadic" : "rational"},
                          {"lo", lo_}, {"hi", hi()}, {"cumulative", rows}};
}

WeightSeq adjoint_reflect(const WeightSeq& w) {
    if (w.side() != Side::Bilateral) fail(ErrorCode::InvalidArgument, "adjoint_reflect needs a bilateral weight");
    std::int64_t lo = 1 - w.hi();
    std::int64_t hi = 1 - w.lo();
    if (w.is_dyadic()) {
        std::vector<std::int64_t> exps;
        exps.reserve(static_cast<std::size_t>(hi - lo + 1));
        for (std::int64_t n = lo; n <= hi; ++n) exps.push_back(w.exponent_at(1 - n));
        auto v = WeightSeq::dyadic(Side::Bilateral, lo, std::move(exps));
        v.with_id(w.id().empty() ? "" : w.id() + "^reflect");
        return v;
    }
    std::vector<Rat> vals;
    vals.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t n = lo; n <= hi; ++n) vals.push_back(w.value_at(1 - n));
    auto v = WeightSeq::rational(Side::Bilateral, lo, std::move(vals));
    v.with_id(w.id().empty() ? "" : w.id() + "^reflect");
    return v;
}

std::int64_t NormSeq::exp_at(std::int64_t n) const {
    if (!dyadic) fail(ErrorCode::InvalidArgument, "exp_at on a rational norm sequence");
    if (n < lo || n > hi()) fail(ErrorCode::Range, "norm index out of range");
    return exps[static_cast<std::size_t>(n - lo)];
}

Rat NormSeq::norm_at(std::int64_t n) const {
    if (n < lo || n > hi()) fail(ErrorCode::Range, "norm index out of range");
    if (dyadic) return Rat::pow2(exps[static_cast<std::size_t>(n - lo)]);
    return vals[static_cast<std::size_t>(n - lo)];
}

NormSeq conjugate_basis_norms(const WeightSeq& w, const SpaceKind& space, std::int64_t lo, std::int64_t hi) {
    if (space.side != w.side()) fail(ErrorCode::InvalidArgument, "space side does not match weight side");
    ProductTable table = ProductTable::build(w);
    if (lo < table.lo() || hi > table.hi() || lo > hi) fail(ErrorCode::Range, "norm range outside product table");
    NormSeq out;
    out.side = w.side();
    out.dyadic = w.is_dyadic();
    out.lo = lo;
    out.weight_id = w.id();
    for (std::int64_t n = lo; n <= hi; ++n) {
        if (out.dyadic)
            out.exps.push_back(-table.exponent(n));
        else
            out.vals.push_back(Rat(1) / table.product(n));
    }
    return out;
}

Rat SparseVec::at(std::int64_t index) const {
    for (const auto& [i, v] : entries)
        if (i == index) return v;
    return Rat(0);
}

void SparseVec::set(std::int64_t index, Rat value) {
    for (auto& [i, v] : entries)
        if (i == index) {
            v = std::move(value);
            return;
        }
    entries.emplace_back(index, std::move(value));
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

SparseVec apply_weighted_backward_shift(const WeightSeq& w, const SparseVec& x) {
    SparseVec out;
    for (const auto& [i, v] : x.entries) {
        if (v.is_zero()) continue;
        std::int64_t target = i - 1;
        if (w.side() == Side::Unilateral && target < 0) continue;
        out.entries.emplace_back(target, w.value_at(i) * v);
    }
    return out;
}

SparseVec apply_plain_backward_shift(const SparseVec& x, Side side) {
    SparseVec out;
    for (const auto& [i, v] : x.entries) {
        if (v.is_zero()) continue;
        std::int64_t target = i - 1;
        if (side == Side::Unilateral && target < 0) continue;
        out.entries.emplace_back(target, v);
    }
    return out;
}

SparseVec conjugation_map(const ProductTable& table, const SparseVec& x) {
    SparseVec out;
    for (const auto& [i, v] : x.entries) out.entries.emplace_back(i, v * table.product(i));
    return out;
}

nlohmann::json ReturnTimeReport::to_json() const {
    return nlohmann::json{{"condition", condition},
                          {"members", members},
                          {"sufficient_members", sufficient_members},
                          {"certification", certification},
                          {"space", space},
                          {"radius", radius},
                          {"weight", weight_id},
                          {"horizon", horizon}};
}

namespace {

// Certified sufficient condition for lp ball feasibility at one m, built
// from the two-coordinate witness x = e_0 + t e_m. With A1 = max(1-P*rho, 0)
// and Q the bilateral backfire product (0 when unilateral), feasibility
// follows from A1^p + Q^p < rho^p; the 1-norm bound A1 + Q < rho certifies
// it for every p >= 1 and is tried first.
bool lp_sufficient(const Rat& P, const Rat& Q, const Rat& rho, const Rat& p) {
    Rat a1 = Rat(1) - P * rho;
    if (a1.sign() < 0) a1 = Rat(0);
    if (a1 + Q < rho) return true;
    if (!p.is_integer()) return false; // fall back to the 1-norm certificate only
    unsigned pi = static_cast<unsigned>(p.num());
    auto pow_rat = [pi](const Rat& x) {
        Rat r(1);
        for (unsigned i = 0; i < pi; ++i) r *= x;
        return r;
    };
    return pow_rat(a1) + pow_rat(Q) < pow_rat(rho);
}

constexpr std::int64_t kTinyExpClamp = -4096;

} // namespace

ReturnTimeReport return_time_e0_ball(const WeightSeq& w, const SpaceKind& space, const Rat& rho, std::int64_t N) {
    if (!(rho > Rat(0) && rho < Rat(1))) fail(ErrorCode::InvalidArgument, "radius must lie in (0,1)");
    if (space.side != w.side()) fail(ErrorCode::InvalidArgument, "space side does not match weight side");
    ProductTable table = ProductTable::build(w);
    if (table.hi() < N) fail(ErrorCode::Range, "weight range too small for horizon");
    bool bilateral = w.side() == Side::Bilateral;
    if (bilateral && table.lo() > -N) fail(ErrorCode::Range, "bilateral weight range too small for horizon");

    Rat forward_threshold = (Rat(1) - rho) / rho; // product must strictly exceed this
    Rat backward_threshold = rho / (Rat(1) - rho);

    ReturnTimeReport report;
    report.space = space.str();
    report.radius = rho.str();
    report.weight_id = w.id();
    report.horizon = N;
    report.condition = "prod(1..m) > " + forward_threshold.str() +
                       (bilateral ? " and prod(-m+1..0) < " + backward_threshold.str() : "");

    bool exact = space.base == SpaceKind::Base::C0 || !bilateral;
    report.certification = exact ? "exact" : "bracket";

    std::optional<std::int64_t> fwd_min_exp, bwd_max_exp;
    if (w.is_dyadic()) {
        fwd_min_exp = min_exp_gt(forward_threshold);
        bwd_max_exp = max_exp_lt(backward_threshold);
    }

    report.members.push_back(0); // T^0 W = W
    report.sufficient_members.push_back(0);
    for (std::int64_t m = 1; m <= N; ++m) {
        bool fwd_ok, bwd_ok = true;
        if (w.is_dyadic()) {
            fwd_ok = table.exponent(m) >= *fwd_min_exp;
            if (bilateral) bwd_ok = -table.exponent(-m) <= *bwd_max_exp;
        } else {
            fwd_ok = table.product(m) > forward_threshold;
            if (bilateral) bwd_ok = Rat(1) / table.product(-m) < backward_threshold;
        }
        if (!(fwd_ok && bwd_ok)) continue;
        report.members.push_back(m);
        if (exact) {
            report.sufficient_members.push_back(m);
            continue;
        }
        // lp bilateral: certify the subset side.
        Rat P, Q;
        if (w.is_dyadic()) {
            std::int64_t pe = table.exponent(m);
            std::int64_t qe = -table.exponent(-m);
            // Clamp extreme exponents conservatively (P down, Q up); this
            // only ever shrinks the certified subset.
            P = Rat::pow2(std::min(pe, -kTinyExpClamp));
            Q = Rat::pow2(std::max(qe, kTinyExpClamp));
        } else {
            P = table.product(m);
            Q = Rat(1) / table.product(-m);
        }
        if (lp_sufficient(P, Q, rho, space.p)) report.sufficient_members.push_back(m);
    }
    return report;
}

ReturnTimeReport return_time_c0_general(const WeightSeq& w, const SparseVec& a, const SparseVec& b, const Rat& delta,
                                        std::int64_t N) {
    if (delta.sign() <= 0) fail(ErrorCode::InvalidArgument, "delta must be positive");
    ProductTable table = ProductTable::build(w);
    ReturnTimeReport report;
    report.space = "c0";
    report.radius = delta.str();
    report.weight_id = w.id();
    report.horizon = N;
    report.certification = "exact";
    report.condition = "coordinatewise open-interval intersection over the joint support";

    for (const auto& [i, v] : b.entries)
        if (w.side() == Side::Unilateral && i < 0) fail(ErrorCode::InvalidArgument, "negative coordinate in unilateral space");
    for (const auto& [i, v] : a.entries)
        if (w.side() == Side::Unilateral && i < 0) fail(ErrorCode::InvalidArgument, "negative coordinate in unilateral space");

    for (std::int64_t m = 0; m <= N; ++m) {
        bool ok = true;
        // Constraint coordinates: supp(b) plus supp(a) shifted by -m.
        std::vector<std::int64_t> coords;
        for (const auto& [i, v] : b.entries) coords.push_back(i);
        for (const auto& [i, v] : a.entries) coords.push_back(i - m);
        std::sort(coords.begin(), coords.end());
        coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
        for (std::int64_t i : coords) {
            if (w.side() == Side::Unilateral && i < 0) continue; // coordinate does not exist
            if (i + m > table.hi() || i < table.lo() || i + m < table.lo())
                fail(ErrorCode::Range, "weight range too small for requested horizon/support");
            Rat P = table.forward(i, m);
            Rat lo1 = a.at(i + m) - delta, hi1 = a.at(i + m) + delta;
            Rat lo2 = (b.at(i) - delta) / P, hi2 = (b.at(i) + delta) / P;
            if (!(lo1 < hi2 && lo2 < hi1)) {
                ok = false;
                break;
            }
        }
        if (ok) report.members.push_back(m);
    }
    report.sufficient_members = report.members;
    return report;
}

} // namespace shiftlab
