#include "vfern/census.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace vfern {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned k)
{
    std::uint64_t r = 1;
    while (k--)
        r *= b;
    return r;
}

// Nonzero tuples over K of length d with last nonzero entry 1.
std::vector<std::vector<Elem>> classes(const Field& K, unsigned d)
{
    std::vector<std::vector<Elem>> out;
    std::vector<Elem> c(d, 0);
    while (true) {
        std::size_t i = 0;
        while (i < c.size() && c[i] == K.order() - 1)
            c[i++] = 0;
        if (i == c.size())
            break;
        ++c[i];
        auto last = std::find_if(c.rbegin(), c.rend(), [](Elem x) { return x != 0; });
        if (*last == 1)
            out.push_back(c);
    }
    return out;
}

}  // namespace

std::uint64_t omega_count(unsigned n, unsigned q, unsigned m)
{
    if (n < 1)
        throw std::invalid_argument("n must be positive");
    const std::uint64_t Q = ipow(q, m);
    std::uint64_t num = 1;
    for (unsigned i = 0; i < n; ++i) {
        const std::uint64_t qi = ipow(q, i);
        if (Q <= qi)
            return 0;
        num *= Q - qi;
    }
    return num / (Q - 1);
}

std::uint64_t omega_bruteforce(unsigned n, unsigned q, unsigned m)
{
    const auto [p, e] = split_prime_power(q);
    const auto F = field_make(p, e, m);
    const Field& K = *F->big;
    VectorSpace V(F->small, n);
    std::uint64_t count = 0;
    for (const auto& c : classes(K, n)) {
        bool injective = true;
        for (Vec v = 1; v < V.size() && injective; ++v) {
            Elem acc = 0;
            for (unsigned i = 0; i < n; ++i)
                acc = K.add(acc, K.mul(F->lift(V.coord(v, i)), c[i]));
            injective = acc != 0;
        }
        count += injective;
    }
    return count;
}

CountReport bv_count_strata(unsigned n, unsigned q, unsigned m)
{
    const auto [p, e] = split_prime_power(q);
    const auto F = field_make(p, e, 1);
    VectorSpace V(F->small, n);
    CountReport r;
    r.n = n;
    r.q = q;
    r.m = m;
    r.omega.push_back(1);
    for (unsigned d = 1; d <= n; ++d)
        r.omega.push_back(omega_count(d, q, m));
    visit_flags(V, Subspace::whole(V), [&](const std::vector<Subspace>& all, const std::vector<std::size_t>& steps) {
        StratumCount s;
        s.count = 1;
        for (std::size_t i = 0; i < steps.size(); ++i) {
            const auto& W = all[steps[i]];
            s.flag += (i ? "<" : "") + W.key(V);
            s.dims.push_back(W.dim());
            if (i > 0)
                s.count *= r.omega[W.dim() - all[steps[i - 1]].dim()];
        }
        r.total += s.count;
        r.strata.push_back(std::move(s));
    });
    return r;
}

BudgetExceeded::BudgetExceeded(double size, double budget)
    : std::runtime_error("enumeration size " + std::to_string(static_cast<long double>(size)) +
                         " exceeds budget " + std::to_string(static_cast<long double>(budget))),
      size(size)
{
}

double bruteforce_size(unsigned n, unsigned q, unsigned m)
{
    const auto [p, e] = split_prime_power(q);
    const auto F = field_make(p, e, 1);
    VectorSpace V(F->small, n);
    const double Q = std::pow(static_cast<double>(q), m);
    double size = 1;
    for (const auto& W : all_subspaces_of(V, Subspace::whole(V)))
        if (W.dim() > 0)
            size *= (std::pow(Q, W.dim()) - 1) / (Q - 1);
    return size;
}

std::uint64_t bv_count_bruteforce(unsigned n, unsigned q, unsigned m, double budget)
{
    const double size = bruteforce_size(n, q, m);
    if (size > budget)
        throw BudgetExceeded(size, budget);
    const auto [p, e] = split_prime_power(q);
    const auto F = field_make(p, e, m);
    const Field& K = *F->big;
    VectorSpace V(F->small, n);

    std::vector<Subspace> subs;
    for (const auto& W : all_subspaces_of(V, Subspace::whole(V)))
        if (W.dim() > 0)
            subs.push_back(W);
    std::stable_sort(subs.begin(), subs.end(), [&](const Subspace& a, const Subspace& b) {
        return a.dim() != b.dim() ? a.dim() < b.dim() : a.key(V) < b.key(V);
    });
    std::vector<std::vector<std::vector<Elem>>> choices(n + 1);
    for (unsigned d = 1; d <= n; ++d)
        choices[d] = classes(K, d);
    // below[i]: earlier subspaces contained in subs[i]
    std::vector<std::vector<std::size_t>> below(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (subs[j].subset_of(subs[i]))
                below[i].push_back(j);

    ClassPoint cp;
    for (const auto& W : subs)
        cp.entries.push_back({W, {}});
    std::uint64_t count = 0;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == subs.size()) {
            count += bv_member(*F, cp);
            return;
        }
        for (const auto& c : choices[subs[i].dim()]) {
            cp.entries[i].values = c;
            bool ok = true;
            for (std::size_t j : below[i]) {
                std::vector<Elem> r;
                for (Vec b : subs[j].basis())
                    r.push_back(functional_eval(*F, cp.entries[i], b));
                if (!proportional(K, r, cp.entries[j].values)) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                go(i + 1);
        }
    };
    go(0);
    return count;
}

void write_csv(std::ostream& os, const CountReport& r)
{
    os << "n,q,m,flag,count\n";
    for (const auto& s : r.strata) {
        std::string dims;
        for (std::size_t i = 0; i < s.dims.size(); ++i)
            dims += (i ? "<" : "") + std::to_string(s.dims[i]);
        os << r.n << ',' << r.q << ',' << r.m << ",\"" << dims << ' ' << s.flag << "\"," << s.count << '\n';
    }
    os << r.n << ',' << r.q << ',' << r.m << ",total," << r.total << '\n';
    if (r.oracle)
        os << r.n << ',' << r.q << ',' << r.m << ",oracle," << *r.oracle << '\n';
}

}  // namespace vfern
