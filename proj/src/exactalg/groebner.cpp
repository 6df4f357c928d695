#include "exactalg/groebner.hpp"

namespace heights::exactalg {

std::vector<Monomial> monomials_of_degree(int nvars, int degree) {
    std::vector<Monomial> out;
    std::vector<int> exps(nvars, 0);
    // Lexicographic enumeration of compositions of `degree` into nvars parts,
    // sorted into descending degrevlex afterwards for deterministic layout.
    std::function<void(int, int)> rec = [&](int idx, int remaining) {
        if (idx == nvars - 1) {
            exps[idx] = remaining;
            Monomial m;
            for (int i = 0; i < nvars; ++i) m.set_exp(i, nvars, exps[i]);
            out.push_back(m);
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            exps[idx] = e;
            rec(idx + 1, remaining - e);
        }
    };
    if (degree < 0) return out;
    rec(0, degree);
    std::sort(out.begin(), out.end(),
              [](const Monomial& a, const Monomial& b) { return Monomial::degrevlex_less(b, a); });
    return out;
}

}  // namespace heights::exactalg
