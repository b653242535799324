#include "isolde/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "isolde/matrix.hpp"

namespace isolde {

namespace {

std::uint64_t below(std::mt19937_64& eng, std::uint64_t n) {
    return n == 0 ? 0 : eng() % n;
}

// Random composition of a denominator into `parts` nonnegative numerators.
void fill_stochastic_row(std::mt19937_64& eng, RatMatrix& m, Eigen::Index row,
                         long max_den) {
    const long den = 1 + static_cast<long>(below(eng, static_cast<std::uint64_t>(max_den)));
    long rem = den;
    for (Eigen::Index j = 0; j + 1 < m.cols(); ++j) {
        const long t = static_cast<long>(below(eng, static_cast<std::uint64_t>(rem) + 1));
        m(row, j) = Rat(t, den);
        rem -= t;
    }
    m(row, m.cols() - 1) = Rat(rem, den);
}

}  // namespace

OracleReport brute_force_min_distance(const PFA& pfa, const SemilinearSet& language,
                                      const Rat& lambda, Nat bound) {
    require_valid(pfa);
    if (language.dimension != static_cast<size_t>(pfa.alphabet_size()))
        throw std::invalid_argument(
            "brute_force_min_distance: language dimension does not match the alphabet");
    OracleReport rep;
    for (const ExponentVec& point : enumerate_points(language, bound)) {
        rep.empty_within_bound = false;
        ++rep.points_checked;
        const Rat d = abs(pfa_value(pfa, point) - lambda);
        if (d == Rat(0)) rep.attains_lambda = true;
        if (!rep.min_distance || d < *rep.min_distance) {
            rep.min_distance = d;
            rep.closest = point;
        }
    }
    return rep;
}

double numeric_limit_check(const RatMatrix& matrix, int iterations, Nat m0_ceiling) {
    if (matrix.rows() != matrix.cols())
        throw std::invalid_argument("numeric_limit_check: matrix is not square");
    if (iterations < 0)
        throw std::invalid_argument("numeric_limit_check: iterations must be nonnegative");
    const LimitSystem ls = make_limit_system(matrix, m0_ceiling);
    const Eigen::Index n = matrix.rows();

    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = matrix(i, j).to_double();
    Eigen::MatrixXd cur = Eigen::MatrixXd::Identity(n, n);
    for (int k = 0; k < iterations; ++k) cur = cur * a;

    const RatMatrix exact =
        limit_matrix(ls, matrix, static_cast<Nat>(iterations) % ls.D);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            worst = std::max(worst, std::abs(cur(i, j) - exact(i, j).to_double()));
    return worst;
}

std::vector<std::string> check_verdict(const PFA& pfa, const SemilinearSet& language,
                                       const Rat& lambda, const IsolationResult& result,
                                       Nat bound) {
    std::vector<std::string> out;
    const OracleReport rep = brute_force_min_distance(pfa, language, lambda, bound);

    if (result.verdict == Verdict::NonIsolated) {
        if (result.epsilon != Rat(0))
            out.push_back("non-isolated result must report epsilon 0, got " +
                          result.epsilon.str());
        if (!result.witness) {
            out.push_back("non-isolated result carries no witness");
            return out;
        }
        for (const std::string& e : verify_witness(pfa, language, lambda, *result.witness))
            out.push_back("witness: " + e);
        if (const auto* fw = std::get_if<FiniteWitness>(&result.witness->kind)) {
            const bool inside = std::all_of(fw->exponents.begin(), fw->exponents.end(),
                                            [&](Nat k) { return k <= bound; });
            if (inside && !rep.attains_lambda)
                out.push_back(
                    "finite witness lies inside the enumeration window but brute force "
                    "never attains the cutpoint");
        }
        return out;
    }

    if (!(Rat(0) < result.epsilon))
        out.push_back("isolated result must report a positive bound, got " +
                      result.epsilon.str());
    if (rep.attains_lambda) {
        std::ostringstream os;
        os << "claimed isolated but brute force attains the cutpoint at (";
        for (size_t i = 0; i < rep.closest->size(); ++i)
            os << (i ? "," : "") << (*rep.closest)[i];
        os << ")";
        out.push_back(os.str());
    } else if (rep.min_distance && *rep.min_distance < result.epsilon) {
        out.push_back("brute-force distance " + rep.min_distance->str() +
                      " undercuts the certified bound " + result.epsilon.str());
    }
    return out;
}

RatMatrix random_stochastic_matrix(std::uint64_t seed, int states, long max_den) {
    if (states < 1) throw std::invalid_argument("random_stochastic_matrix: need >= 1 state");
    if (max_den < 1)
        throw std::invalid_argument("random_stochastic_matrix: need max_den >= 1");
    std::mt19937_64 eng(seed);
    RatMatrix m(states, states);
    for (Eigen::Index i = 0; i < states; ++i) fill_stochastic_row(eng, m, i, max_den);
    return m;
}

RandomProblem random_problem(std::uint64_t seed, int max_states, size_t max_letters,
                             long max_den) {
    if (max_states < 2) throw std::invalid_argument("random_problem: need max_states >= 2");
    if (max_letters < 1)
        throw std::invalid_argument("random_problem: need max_letters >= 1");
    std::mt19937_64 eng(seed);
    const int n = 2 + static_cast<int>(below(eng, static_cast<std::uint64_t>(max_states - 1)));
    const size_t l = 1 + below(eng, max_letters);

    RandomProblem prob;
    RatMatrix init(1, n);
    fill_stochastic_row(eng, init, 0, max_den);
    prob.pfa.initial = init.row(0);
    prob.pfa.accept = RatColVec(n);
    for (int i = 0; i < n; ++i) prob.pfa.accept(i, 0) = Rat(0);
    prob.pfa.accept(static_cast<Eigen::Index>(below(eng, n)), 0) = Rat(1);
    for (int i = 0; i < n; ++i)
        if (below(eng, 2) == 0) prob.pfa.accept(i, 0) = Rat(1);
    for (size_t j = 0; j < l; ++j) {
        RatMatrix m(n, n);
        for (Eigen::Index i = 0; i < n; ++i) fill_stochastic_row(eng, m, i, max_den);
        prob.pfa.letters.push_back({std::string(1, static_cast<char>('a' + j)), m});
    }

    NatVec base(l, 0);
    for (auto& b : base) b = below(eng, 3);
    std::vector<NatVec> periods;
    const size_t n_periods = below(eng, 3);
    for (size_t i = 0; i < n_periods; ++i) {
        NatVec q(l, 0);
        for (auto& c : q) c = below(eng, 3);
        periods.push_back(q);
    }
    prob.language = SemilinearSet(l, {LinearSet(base, periods)});
    const LinearSet& comp = prob.language.components[0];

    const std::uint64_t mode = below(eng, 3);
    if (mode == 1) {
        // A genuine limit value of the component: pinned letters use exact
        // powers, free letters their limit matrix at the base residue.
        RatRowVec row = prob.pfa.initial;
        for (size_t j = 0; j < l; ++j) {
            bool free = false;
            for (const NatVec& q : comp.periods)
                if (q[j] != 0) free = true;
            const RatMatrix& a = prob.pfa.letters[j].matrix;
            if (free) {
                const LimitSystem ls = make_limit_system(a);
                row = row * limit_matrix(ls, a, comp.base[j] % ls.D);
            } else {
                row = row * mat_pow(a, comp.base[j]);
            }
        }
        Rat v(0);
        for (Eigen::Index i = 0; i < row.cols(); ++i)
            v += row(0, i) * prob.pfa.accept(i, 0);
        prob.lambda = v;
        return prob;
    }

    // An attained value: the base plus a few period multiples.
    NatVec point = comp.base;
    for (const NatVec& q : comp.periods) {
        const Nat t = below(eng, 3);
        for (size_t j = 0; j < l; ++j) point[j] += t * q[j];
    }
    prob.lambda = pfa_value(prob.pfa, point);
    if (mode == 2) {
        const long den = 7 + static_cast<long>(below(eng, 20));
        const Rat delta(1, den);
        prob.lambda = below(eng, 2) == 0 ? prob.lambda + delta : prob.lambda - delta;
    }
    return prob;
}

SubsetSumInstance random_subset_sum_instance(std::uint64_t seed, size_t max_items,
                                             Nat max_item) {
    if (max_items < 1)
        throw std::invalid_argument("random_subset_sum_instance: need max_items >= 1");
    if (max_item < 1)
        throw std::invalid_argument("random_subset_sum_instance: need max_item >= 1");
    std::mt19937_64 eng(seed);
    SubsetSumInstance inst;
    const size_t k = 1 + below(eng, max_items);
    inst.items.resize(k);
    for (auto& x : inst.items) x = 1 + below(eng, max_item);

    std::set<Nat> sums{0};
    for (const Nat x : inst.items) {
        std::set<Nat> next = sums;
        for (const Nat s : sums) next.insert(s + x);
        sums = next;
    }

    if (below(eng, 2) == 0) {
        inst.solvable = true;
        auto it = sums.begin();
        std::advance(it, static_cast<long>(below(eng, sums.size())));
        inst.target = *it;
    } else {
        inst.solvable = false;
        std::vector<Nat> candidates;  // one above an achievable sum, unachievable
        for (const Nat s : sums)
            if (sums.count(s + 1) == 0) candidates.push_back(s + 1);
        inst.target = candidates[below(eng, candidates.size())];
    }
    return inst;
}

}  // namespace isolde
