#include "vcalc/fields.hpp"

#include <algorithm>

namespace vcalc {

FieldEval Field::eval(const ModVec& v) const {
    FieldEval out;
    for (const auto& [idx, c] : v.comp) {
        const FieldEval& fe = eval(idx);
        out.cert_hi = std::min(out.cert_hi, fe.cert_hi);
        for (const auto& [e, vec] : fe.coeffs) {
            ModVec scaled = vec.scaled(c);
            if (scaled.is_zero()) continue;
            auto it = out.coeffs.find(e);
            if (it == out.coeffs.end()) {
                out.coeffs.emplace(e, std::move(scaled));
            } else {
                it->second = it->second + scaled;
                if (it->second.is_zero()) out.coeffs.erase(it);
            }
        }
    }
    return out;
}

namespace {

struct GeneratingImpl : FieldImpl {
    int fam;
    bool plus_only = false;

    FieldEval eval_basis(int idx) const override {
        FieldEval out;
        const FockModule& M = *mod;
        int w = M.algebra().families[fam].weight;
        int d = M.degree(idx);
        // coefficient of x^e is a(-e-w); representable while degree stays <= depth
        long e_lo = -d - w;  // below: annihilated (degree < 0)
        long e_hi = M.depth() - d - w;
        out.cert_hi = e_hi;
        for (long e = e_lo; e <= e_hi; ++e) {
            long mode = -e - w;
            if (plus_only && mode >= 0) continue;
            ModVec v = M.act(fam, mode, idx);
            if (!v.is_zero()) out.coeffs.emplace(e, std::move(v));
        }
        return out;
    }
};

struct IdentityImpl : FieldImpl {
    FieldEval eval_basis(int idx) const override {
        FieldEval out;
        out.coeffs.emplace(0, ModVec::unit(idx));
        return out;
    }
};

struct SumImpl : FieldImpl {
    std::vector<std::pair<QScalar, Field>> parts;

    FieldEval eval_basis(int idx) const override {
        FieldEval out;
        for (const auto& [c, f] : parts) {
            const FieldEval& fe = f.eval(idx);
            out.cert_hi = std::min(out.cert_hi, fe.cert_hi);
            for (const auto& [e, vec] : fe.coeffs) {
                ModVec sv = vec.scaled(c);
                if (sv.is_zero()) continue;
                auto it = out.coeffs.find(e);
                if (it == out.coeffs.end()) {
                    out.coeffs.emplace(e, std::move(sv));
                } else {
                    it->second = it->second + sv;
                    if (it->second.is_zero()) out.coeffs.erase(it);
                }
            }
        }
        return out;
    }
};

struct RescaleImpl : FieldImpl {
    Field base;
    QScalar alpha;

    FieldEval eval_basis(int idx) const override {
        const FieldEval& fe = base.eval(idx);
        FieldEval out;
        out.cert_hi = fe.cert_hi;
        for (const auto& [e, vec] : fe.coeffs) out.coeffs.emplace(e, vec.scaled(alpha.pow(e)));
        return out;
    }
};

struct DerivImpl : FieldImpl {
    Field base;

    FieldEval eval_basis(int idx) const override {
        const FieldEval& fe = base.eval(idx);
        FieldEval out;
        out.cert_hi = fe.cert_hi - 1;
        for (const auto& [e, vec] : fe.coeffs) {
            if (e == 0) continue;
            out.coeffs.emplace(e - 1, vec.scaled(QScalar(Rational(e))));
        }
        return out;
    }
};

struct TMultImpl : FieldImpl {
    Field base;
    ScalarSeries g;  // exact, one variable

    FieldEval eval_basis(int idx) const override {
        const FieldEval& fe = base.eval(idx);
        FieldEval out;
        long gmin = 0, gmax = 0;
        bool first = true;
        for (const auto& [ge, gc] : g.terms) {
            if (first || ge[0] < gmin) gmin = ge[0];
            if (first || ge[0] > gmax) gmax = ge[0];
            first = false;
        }
        if (first) return out;  // zero multiplier
        out.cert_hi = fe.cert_hi + gmin;
        for (const auto& [ge, gc] : g.terms)
            for (const auto& [e, vec] : fe.coeffs) {
                ModVec sv = vec.scaled(gc);
                if (sv.is_zero()) continue;
                long t = e + ge[0];
                auto it = out.coeffs.find(t);
                if (it == out.coeffs.end()) {
                    out.coeffs.emplace(t, std::move(sv));
                } else {
                    it->second = it->second + sv;
                    if (it->second.is_zero()) out.coeffs.erase(it);
                }
            }
        // drop uncertified tail entries
        for (auto it = out.coeffs.begin(); it != out.coeffs.end();)
            it = (it->first > out.cert_hi) ? out.coeffs.erase(it) : std::next(it);
        return out;
    }
};

struct CustomImpl : FieldImpl {
    std::function<FieldEval(int)> fn;
    FieldEval eval_basis(int idx) const override { return fn(idx); }
};

}  // namespace

Field Field::generating(ModulePtr mod, const std::string& family) {
    auto impl = std::make_shared<GeneratingImpl>();
    impl->mod = mod;
    impl->fam = mod->algebra().family(family);
    impl->wlo = impl->whi = mod->algebra().families[impl->fam].weight;
    impl->label = family;
    return Field(impl);
}

Field Field::generating_plus(ModulePtr mod, const std::string& family) {
    auto impl = std::make_shared<GeneratingImpl>();
    impl->mod = mod;
    impl->fam = mod->algebra().family(family);
    impl->plus_only = true;
    impl->wlo = impl->whi = mod->algebra().families[impl->fam].weight;
    impl->label = family + "+";
    return Field(impl);
}

Field Field::identity(ModulePtr mod) {
    auto impl = std::make_shared<IdentityImpl>();
    impl->mod = mod;
    impl->wlo = impl->whi = 0;
    impl->label = "1";
    return Field(impl);
}

Field Field::sum(std::vector<std::pair<QScalar, Field>> parts, std::string label) {
    if (parts.empty()) throw FieldError("empty field sum");
    auto impl = std::make_shared<SumImpl>();
    impl->mod = parts.front().second.module();
    impl->wlo = parts.front().second.weight_lo();
    impl->whi = parts.front().second.weight_hi();
    for (const auto& [c, f] : parts) {
        impl->wlo = std::min(impl->wlo, f.weight_lo());
        impl->whi = std::max(impl->whi, f.weight_hi());
        if (f.module() != impl->mod) throw FieldError("field sum across modules");
    }
    impl->label = label.empty() ? "sum" : std::move(label);
    impl->parts = std::move(parts);
    return Field(impl);
}

Field Field::scaled(const QScalar& c, const Field& f) {
    return sum({{c, f}}, "(" + c.str() + ")*" + f.label());
}

Field Field::rescale_arg(const Field& f, const QScalar& alpha) {
    if (alpha.is_zero()) throw FieldError("rescale by zero");
    auto impl = std::make_shared<RescaleImpl>();
    impl->mod = f.module();
    impl->base = f;
    impl->alpha = alpha;
    impl->wlo = f.weight_lo();
    impl->whi = f.weight_hi();
    impl->label = "R[" + alpha.str() + "]" + f.label();
    return Field(impl);
}

Field Field::deriv(const Field& f) {
    auto impl = std::make_shared<DerivImpl>();
    impl->mod = f.module();
    impl->base = f;
    impl->wlo = f.weight_lo() + 1;
    impl->whi = f.weight_hi() + 1;
    impl->label = "D" + f.label();
    return Field(impl);
}

Field Field::t_multiply(const ScalarSeries& g, const Field& f) {
    if (!g.exact) throw FieldError("t_multiply needs an exact multiplier");
    if (g.ord.size() != 1) throw FieldError("t_multiply needs a one-variable multiplier");
    auto impl = std::make_shared<TMultImpl>();
    impl->mod = f.module();
    impl->base = f;
    impl->g = g;
    long gmin = 0, gmax = 0;
    bool first = true;
    for (const auto& [ge, gc] : g.terms) {
        if (first || ge[0] < gmin) gmin = ge[0];
        if (first || ge[0] > gmax) gmax = ge[0];
        first = false;
    }
    impl->wlo = f.weight_lo() - static_cast<int>(gmax);
    impl->whi = f.weight_hi() - static_cast<int>(gmin);
    impl->label = "(" + to_string(g) + ")*" + f.label();
    return Field(impl);
}

Field Field::custom(ModulePtr mod, int wlo, int whi, std::string label,
                    std::function<FieldEval(int)> ev) {
    auto impl = std::make_shared<CustomImpl>();
    impl->mod = std::move(mod);
    impl->wlo = wlo;
    impl->whi = whi;
    impl->label = std::move(label);
    impl->fn = std::move(ev);
    return Field(impl);
}

bool Field::is_identity_candidate() const {
    return dynamic_cast<const IdentityImpl*>(p_.get()) != nullptr;
}

ModSeries multi_evaluate(const std::vector<Field>& fields, const std::vector<std::string>& vars,
                         const ModVec& w, const Window& target) {
    if (fields.size() != vars.size()) throw FieldError("fields/vars size mismatch");
    int r = static_cast<int>(fields.size());
    Ordering ord(std::vector<std::string>(vars.begin(), vars.end()));
    ModSeries out;
    out.ord = ord;
    out.exact = false;
    out.window = target;
    out.cert.assign(target.cells(), false);

    if (r == 0) {
        out.exact = true;
        if (!w.is_zero()) out.terms.emplace(ExpVec{}, w);
        out.hull = Hull::from_points(0, out.terms.begin(), out.terms.end());
        return out;
    }
    const FockModule& M = *fields.front().module();
    int D = M.depth();
    int dw = M.degree(w);

    // stage-by-stage application, innermost (rightmost field) first;
    // cert_tops[k] maps the suffix (e_{k+1},...,e_r) to the certified top
    // exponent of stage k on the vector reached through that suffix
    std::vector<std::map<ExpVec, long>> cert_tops(r);
    std::map<ExpVec, ModVec> cur;  // suffix (e_k,...,e_r) -> vector
    cur.emplace(ExpVec{}, w);
    for (int k = r - 1; k >= 0; --k) {
        std::map<ExpVec, ModVec> next;
        for (const auto& [suf, vec] : cur) {
            FieldEval fe = fields[k].eval(vec);
            cert_tops[k].emplace(suf, fe.cert_hi);
            for (auto& [e, v] : fe.coeffs) {
                if (e > fe.cert_hi) continue;
                ExpVec ns;
                ns.reserve(suf.size() + 1);
                ns.push_back(static_cast<int>(e));
                ns.insert(ns.end(), suf.begin(), suf.end());
                next.emplace(std::move(ns), std::move(v));
            }
        }
        cur = std::move(next);
    }
    for (auto& [e, v] : cur)
        if (target.contains(e)) out.terms.emplace(e, std::move(v));

    // hull: suffix-sum lower bounds from the degree grading; upper side is
    // unconstrained (the overflow region is unknown, not empty)
    out.hull = Hull(r);
    for (size_t m = 1; m < out.hull.lo.size(); ++m) {
        // detect suffix masks {k,...,r-1}
        int kmin = r;
        bool contiguous_suffix = true;
        for (int v = 0; v < r; ++v)
            if (m & (size_t(1) << v)) kmin = std::min(kmin, v);
        for (int v = kmin; v < r; ++v)
            if (!(m & (size_t(1) << v))) contiguous_suffix = false;
        if (contiguous_suffix) {
            std::int64_t s = -dw;
            for (int v = kmin; v < r; ++v) s -= fields[v].weight_hi();
            out.hull.lo[m] = s;
        }
    }

    // certification: walk the stages from the inside out
    target.for_each([&](const ExpVec& e) {
        ExpVec suf;
        bool ok = true;
        for (int k = r - 1; k >= 0; --k) {
            auto it = cert_tops[k].find(suf);
            if (it == cert_tops[k].end()) break;  // earlier stage gave zero: certified
            if (e[k] > it->second) {
                ok = false;
                break;
            }
            suf.insert(suf.begin(), e[k]);
        }
        out.cert[target.cell_index(e)] = ok;
    });
    (void)D;
    return out;
}

ModSeries field_series(const Field& f, const std::string& var, const ModVec& w,
                       const Window& target) {
    return multi_evaluate({f}, {var}, w, target);
}

FieldCompare fields_equal(const Field& a, const Field& b, long probe_lo, long probe_hi) {
    FieldCompare out;
    const FockModule& M = *a.module();
    for (int idx = 0; idx < M.dim() && out.equal; ++idx) {
        const FieldEval& fa = a.eval(idx);
        const FieldEval& fb = b.eval(idx);
        long hi = std::min({fa.cert_hi, fb.cert_hi, probe_hi});
        for (long e = probe_lo; e <= hi; ++e) {
            if (!(fa.coeff(e) == fb.coeff(e))) {
                out.equal = false;
                out.first_basis_mismatch = idx;
                out.mismatch_exp = e;
                break;
            }
        }
    }
    return out;
}

}  // namespace vcalc
