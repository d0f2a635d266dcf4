#include "sqcode/poly.hpp"

namespace sqcode::poly {

Poly trim(Poly p) {
    while (!p.empty() && p.back().code == 0) p.pop_back();
    return p;
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Fe eval(const Field& f, const Poly& p, Fe x) {
    Fe acc{0};
    for (size_t i = p.size(); i-- > 0;) acc = f.add(f.mul(acc, x), p[i]);
    return acc;
}

Poly add(const Field& f, const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), Fe{0});
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] = f.add(out[i], b[i]);
    return trim(std::move(out));
}

Poly mul(const Field& f, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, Fe{0});
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].code == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
    }
    return trim(std::move(out));
}

Poly scale(const Field& f, const Poly& a, Fe c) {
    Poly out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = f.mul(a[i], c);
    return trim(std::move(out));
}

std::pair<Poly, Poly> divmod(const Field& f, const Poly& a, const Poly& b) {
    const Poly bt = trim(b);
    if (bt.empty()) throw ParamError("polynomial division by zero");
    Poly rem = trim(a);
    if (rem.size() < bt.size()) return {Poly{}, rem};
    Poly quot(rem.size() - bt.size() + 1, Fe{0});
    const Fe lead_inv = f.inv(bt.back());
    while (rem.size() >= bt.size()) {
        const Fe c = f.mul(rem.back(), lead_inv);
        const size_t shift = rem.size() - bt.size();
        quot[shift] = c;
        for (size_t i = 0; i < bt.size(); ++i)
            rem[shift + i] = f.sub(rem[shift + i], f.mul(c, bt[i]));
        rem = trim(std::move(rem));
        if (rem.empty()) break;
    }
    return {trim(std::move(quot)), rem};
}

Poly interpolate(const Field& f, std::span<const Fe> xs, std::span<const Fe> ys) {
    if (xs.size() != ys.size()) throw ParamError("interpolate: point count mismatch");
    // Newton's divided differences
    const size_t n = xs.size();
    std::vector<Fe> coef(ys.begin(), ys.end());
    for (size_t level = 1; level < n; ++level) {
        for (size_t i = n - 1; i >= level; --i) {
            const Fe dx = f.sub(xs[i], xs[i - level]);
            if (dx.code == 0) throw ParamError("interpolate: repeated x value");
            coef[i] = f.div(f.sub(coef[i], coef[i - 1]), dx);
            if (i == level) break;
        }
    }
    Poly p;
    for (size_t i = n; i-- > 0;) {
        // p = p * (x - xs[i]) + coef[i]
        p = add(f, mul(f, p, Poly{f.neg(xs[i]), f.one()}), Poly{coef[i]});
    }
    return p;
}

}  // namespace sqcode::poly
