#include "forestsos/sign_search.hpp"

#include <limits>
#include <map>

#include "forestsos/error.hpp"
#include "forestsos/rayleigh.hpp"

namespace forestsos {

std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::kFound: return "Found";
        case SearchStatus::kExhausted: return "Exhausted";
        case SearchStatus::kBudget: return "Budget";
    }
    return {};
}

namespace {

std::int64_t to_int64(const Integer& c) {
    if (!c.fits_slong_p()) throw InvalidArgument("coefficient too large for sign search: " + c.get_str());
    return c.get_si();
}

struct Group {
    std::size_t entry;
    EdgeSet cycle;
    Polynomial sum;  // sum of y^(A - outer) over the A-sets closing this cycle
};

/// A product 2 y^outer P_i P_j whose sign is s_i * s_j.
struct Cross {
    int var_a, var_b;  // -1 when the sign is fixed to +1
    std::vector<std::pair<std::size_t, std::int64_t>> terms;
};

class Searcher {
public:
    Searcher(SosCert& skeleton, const Polynomial& target, std::uint64_t budget)
        : cert_(skeleton), budget_(budget) {
        build(target);
    }

    std::size_t free_signs() const { return static_cast<std::size_t>(vars_); }
    std::uint64_t nodes() const { return nodes_; }

    SearchStatus run() {
        if (mismatch_at_start_) return SearchStatus::kExhausted;
        assignment_.assign(static_cast<std::size_t>(vars_), 0);
        SearchStatus s = descend(0);
        if (s == SearchStatus::kFound) apply_signs();
        return s;
    }

private:
    void build(const Polynomial& target) {
        std::vector<Group> groups;
        for (std::size_t i = 0; i < cert_.entries.size(); ++i) {
            auto& en = cert_.entries[i];
            std::map<EdgeSet, Polynomial> by_cycle;
            for (const auto& t : en.inner) by_cycle[t.cycle] += Polynomial::of_set(t.forest - en.outer);
            bool first = true;
            for (auto& [cy, p] : by_cycle) {
                group_var_.push_back(first ? -1 : vars_++);
                first = false;
                groups.push_back({i, cy, std::move(p)});
            }
        }

        // Residual left for the cross terms once all squares are in.
        Polynomial residual = target;
        for (const auto& gr : groups) residual -= Polynomial::of_set(cert_.entries[gr.entry].outer) * (gr.sum * gr.sum);

        auto index_of = [this](const Monomial& m) {
            auto [it, fresh] = index_.emplace(m, want_.size());
            if (fresh) {
                want_.push_back(0);
                last_var_.push_back(-1);
            }
            return it->second;
        };
        for (const auto& [m, c] : residual.terms()) want_[index_of(m)] = to_int64(c);

        for (std::size_t a = 0; a < groups.size(); ++a) {
            for (std::size_t b = a + 1; b < groups.size() && groups[b].entry == groups[a].entry; ++b) {
                Polynomial p = Integer(2) * Polynomial::of_set(cert_.entries[groups[a].entry].outer) *
                               (groups[a].sum * groups[b].sum);
                Cross x{group_var_[a], group_var_[b], {}};
                for (const auto& [m, c] : p.terms()) x.terms.emplace_back(index_of(m), to_int64(c));
                crosses_.push_back(std::move(x));
            }
        }
        groups_ = std::move(groups);

        // A cross term is settled once its later variable is assigned.
        settle_.assign(static_cast<std::size_t>(vars_) + 1, {});
        for (std::size_t k = 0; k < crosses_.size(); ++k) {
            int v = std::max(crosses_[k].var_a, crosses_[k].var_b);
            settle_[static_cast<std::size_t>(v + 1)].push_back(k);
            for (const auto& [idx, c] : crosses_[k].terms) {
                last_var_[idx] = std::max(last_var_[idx], v);
            }
        }
        check_at_.assign(static_cast<std::size_t>(vars_) + 1, {});
        for (std::size_t idx = 0; idx < want_.size(); ++idx)
            check_at_[static_cast<std::size_t>(last_var_[idx] + 1)].push_back(idx);

        have_.assign(want_.size(), 0);
        // Cross terms between two fixed signs and untouched monomials.
        for (std::size_t k : settle_[0]) add(k, 1);
        for (std::size_t idx : check_at_[0])
            if (have_[idx] != want_[idx]) mismatch_at_start_ = true;
    }

    int value(int var) const { return var < 0 ? 1 : assignment_[static_cast<std::size_t>(var)]; }

    void add(std::size_t k, int direction) {
        const auto& x = crosses_[k];
        std::int64_t s = static_cast<std::int64_t>(value(x.var_a) * value(x.var_b) * direction);
        for (const auto& [idx, c] : x.terms) have_[idx] += s * c;
    }

    SearchStatus descend(int var) {
        if (var == vars_) return SearchStatus::kFound;
        for (int s : {1, -1}) {
            if (budget_ && nodes_ >= budget_) return SearchStatus::kBudget;
            ++nodes_;
            assignment_[static_cast<std::size_t>(var)] = s;
            const auto& settle = settle_[static_cast<std::size_t>(var + 1)];
            for (std::size_t k : settle) add(k, 1);
            bool ok = true;
            for (std::size_t idx : check_at_[static_cast<std::size_t>(var + 1)])
                if (have_[idx] != want_[idx]) {
                    ok = false;
                    break;
                }
            SearchStatus r = ok ? descend(var + 1) : SearchStatus::kExhausted;
            if (r == SearchStatus::kFound) return r;
            for (std::size_t k : settle) add(k, -1);
            if (r == SearchStatus::kBudget) return r;
        }
        assignment_[static_cast<std::size_t>(var)] = 0;
        return SearchStatus::kExhausted;
    }

    void apply_signs() {
        for (std::size_t i = 0; i < groups_.size(); ++i)
            cert_.entries[groups_[i].entry].signs[groups_[i].cycle] = value(group_var_[i]);
    }

    SosCert& cert_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    int vars_ = 0;
    bool mismatch_at_start_ = false;
    std::vector<Group> groups_;
    std::vector<int> group_var_;
    std::vector<Cross> crosses_;
    std::map<Monomial, std::size_t> index_;
    std::vector<std::int64_t> want_, have_;
    std::vector<int> last_var_;
    std::vector<std::vector<std::size_t>> settle_, check_at_;
    std::vector<int> assignment_;
};

template <class Cert, class Verify>
SearchResult<Cert> run_search(Cert skeleton, const Polynomial& target, const SearchOptions& opts, Verify verify) {
    SearchResult<Cert> r;
    Searcher s(skeleton, target, opts.budget);
    r.free_signs = s.free_signs();
    r.status = s.run();
    r.nodes = s.nodes();
    if (r.status == SearchStatus::kFound) {
        VerifyOptions vo;
        vo.target = &target;
        Verdict v = verify(skeleton, vo);
        if (!v.accepted()) throw Error("sign search produced a certificate that does not verify:\n" + v.to_text());
        r.cert = std::move(skeleton);
    }
    return r;
}

}  // namespace

SearchResult<DeltaCert> sign_search_delta(const MultiGraph& g, const EdgeId& e, const EdgeId& f,
                                          const SearchOptions& opts) {
    DeltaCert sk = delta_skeleton(g, e, f);
    Polynomial target = delta(g, e, f);
    return run_search(std::move(sk), target, opts,
                      [&](const DeltaCert& c, const VerifyOptions& vo) { return verify_delta(g, e, f, c, vo); });
}

SearchResult<PhiCert> sign_search_phi(const MultiGraph& g, const EdgeId& e, const SearchOptions& opts) {
    PhiCert sk = phi_skeleton(g, e);
    Polynomial target = phi(g, e);
    return run_search(std::move(sk), target, opts,
                      [&](const PhiCert& c, const VerifyOptions& vo) { return verify_phi(g, e, c, vo); });
}

}  // namespace forestsos
