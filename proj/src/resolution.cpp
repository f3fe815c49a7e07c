#include "cedga/resolution.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <sstream>

namespace cedga {

namespace {

template <typename T>
std::vector<T> symmetric_difference_sorted(std::vector<T> v)
{
    std::sort(v.begin(), v.end());
    std::vector<T> out;
    for (size_t i = 0; i < v.size();) {
        size_t j = i;
        while (j < v.size() && v[j] == v[i])
            ++j;
        if ((j - i) % 2 == 1)
            out.push_back(v[i]);
        i = j;
    }
    return out;
}

} // namespace

HatElement::HatElement(std::vector<TriWord> ts) : terms(symmetric_difference_sorted(std::move(ts))) {}

HatElement hat_add(const HatElement& a, const HatElement& b)
{
    HatElement out;
    std::set_symmetric_difference(a.terms.begin(), a.terms.end(), b.terms.begin(), b.terms.end(),
                                  std::back_inserter(out.terms));
    return out;
}

TensorElement::TensorElement(std::vector<TensorWord> ts)
    : terms(symmetric_difference_sorted(std::move(ts)))
{
}

TensorElement tensor_add(const TensorElement& a, const TensorElement& b)
{
    TensorElement out;
    std::set_symmetric_difference(a.terms.begin(), a.terms.end(), b.terms.begin(), b.terms.end(),
                                  std::back_inserter(out.terms));
    return out;
}

/******** ShortResolution ********/

HatElement ShortResolution::delta(const Word& w) const
{
    // Delta(s) = 0, Delta(x1...xn) = sum over hat positions
    std::vector<TriWord> ts;
    for (size_t l = 0; l < w.letters.size(); ++l) {
        TriWord t;
        t.hat = w.letters[l];
        t.left.letters.assign(w.letters.begin(), w.letters.begin() + l);
        t.right.letters.assign(w.letters.begin() + l + 1, w.letters.end());
        if (t.left.empty())
            t.left.unit = static_cast<int32_t>(over.gen(t.hat).left);
        if (t.right.empty())
            t.right.unit = static_cast<int32_t>(over.gen(t.hat).right);
        ts.push_back(std::move(t));
    }
    return HatElement(std::move(ts));
}

HatElement ShortResolution::delta(const Element& e) const
{
    HatElement out;
    for (const Word& w : e.words)
        out = hat_add(out, delta(w));
    return out;
}

HatElement ShortResolution::mul_left(const Element& a, const HatElement& t) const
{
    std::vector<TriWord> ts;
    for (const Word& u : a.words)
        for (const TriWord& x : t.terms) {
            Element prod = multiply(Element::single(u), Element::single(x.left), over);
            for (const Word& w : prod.words)
                ts.push_back({w, x.hat, x.right});
        }
    return HatElement(std::move(ts));
}

HatElement ShortResolution::mul_right(const HatElement& t, const Element& b) const
{
    std::vector<TriWord> ts;
    for (const TriWord& x : t.terms)
        for (const Word& v : b.words) {
            Element prod = multiply(Element::single(x.right), Element::single(v), over);
            for (const Word& w : prod.words)
                ts.push_back({x.left, x.hat, w});
        }
    return HatElement(std::move(ts));
}

HatElement ShortResolution::d_column(const TriWord& t) const
{
    HatElement out;
    // (da) c^ b
    for (const Word& u : differentiate(Element::single(t.left), over).words)
        out = hat_add(out, HatElement({{u, t.hat, t.right}}));
    // a (hat dc) b
    HatElement mid = delta(over.differential.at(t.hat));
    mid = mul_left(Element::single(t.left), mid);
    mid = mul_right(mid, Element::single(t.right));
    out = hat_add(out, mid);
    // a c^ (db)
    for (const Word& v : differentiate(Element::single(t.right), over).words)
        out = hat_add(out, HatElement({{t.left, t.hat, v}}));
    return out;
}

TensorElement ShortResolution::iota(const TriWord& t) const
{
    Word hat_word({t.hat});
    std::vector<TensorWord> ts;
    for (const Word& u : multiply(Element::single(t.left), Element::single(hat_word), over).words)
        ts.push_back({u, t.right});
    for (const Word& v : multiply(Element::single(hat_word), Element::single(t.right), over).words)
        ts.push_back({t.left, v});
    return TensorElement(std::move(ts));
}

TensorElement ShortResolution::d_tensor(const TensorWord& t) const
{
    std::vector<TensorWord> ts;
    for (const Word& u : differentiate(Element::single(t.left), over).words)
        ts.push_back({u, t.right});
    for (const Word& v : differentiate(Element::single(t.right), over).words)
        ts.push_back({t.left, v});
    return TensorElement(std::move(ts));
}

Element ShortResolution::mult(const TensorWord& t) const
{
    return multiply(Element::single(t.left), Element::single(t.right), over);
}

bool ShortResolution::d_squared_zero(const TriWord& t) const
{
    // cone differential: hat column -> hat column (+) tensor column
    HatElement dd;
    for (const TriWord& x : d_column(t).terms)
        dd = hat_add(dd, d_column(x));
    if (!dd.is_zero())
        return false;
    TensorElement glue = iota(t);
    TensorElement cross;
    for (const TriWord& x : d_column(t).terms)
        cross = tensor_add(cross, iota(x));
    for (const TensorWord& x : glue.terms)
        cross = tensor_add(cross, d_tensor(x));
    return cross.is_zero();
}

ShortResolution build_short_resolution(const Dga& d)
{
    if (d.slashed)
        throw error("build_short_resolution: slashed input");
    return ShortResolution{d};
}

/******** length-graded exactness ********/

std::vector<Word> composable_words(const Dga& d, uint32_t n)
{
    std::vector<Word> out;
    if (n == 0) {
        for (uint32_t s = 0; s < d.ring.size(); ++s)
            out.push_back(Word::unit_at(static_cast<int32_t>(s)));
        return out;
    }
    // DFS over letters chained by idempotents
    std::vector<uint32_t> stack;
    auto rec = [&](auto&& self, uint32_t depth) -> void {
        if (depth == n) {
            out.push_back(Word(stack));
            return;
        }
        for (uint32_t id = 0; id < d.gen_count(); ++id) {
            if (!stack.empty() && d.gen(stack.back()).right != d.gen(id).left)
                continue;
            stack.push_back(id);
            self(self, depth + 1);
            stack.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

ExactnessLengthRow exactness_at_length(const Dga& d, uint32_t n)
{
    if (d.slashed)
        throw error("length_graded_exactness: input must not be slashed");
    {
        std::vector<Word> words = composable_words(d, n);
        uint64_t nwords = words.size();
        ExactnessLengthRow row;
        row.length = n;
        row.dim_alg = nwords;
        if (n == 0) {
            row.dim_hat = 0;
            row.dim_mid = nwords; // k_S (x)_{k_S} k_S has basis {s (x) s}
            // mu is the identity on that basis
            row.rank_iota = 0;
            row.rank_mu = nwords;
            row.exact = true;
            return row;
        }
        row.dim_hat = nwords * n;
        row.dim_mid = nwords * (n + 1);
        std::map<Word, uint32_t> word_index;
        for (uint32_t w = 0; w < nwords; ++w)
            word_index[words[w]] = w;
        ShortResolution res{d};
        // The middle basis (word, split) is ordered per word, so the
        // elimination stays block local.
        auto mid_index = [&](const TensorWord& t) -> uint32_t {
            Word full = concat(t.left, t.right);
            auto it = word_index.find(full);
            if (it == word_index.end())
                throw error("length_graded_exactness: product escaped the length piece");
            return it->second * (n + 1) + static_cast<uint32_t>(t.left.size());
        };
        Gf2Matrix iota_m(static_cast<uint32_t>(row.dim_mid), static_cast<uint32_t>(row.dim_hat));
        for (uint32_t w = 0; w < nwords; ++w)
            for (uint32_t l = 1; l <= n; ++l) {
                TriWord t;
                t.hat = words[w].letters[l - 1];
                t.left.letters.assign(words[w].letters.begin(), words[w].letters.begin() + (l - 1));
                t.right.letters.assign(words[w].letters.begin() + l, words[w].letters.end());
                if (t.left.empty())
                    t.left.unit = static_cast<int32_t>(d.gen(t.hat).left);
                if (t.right.empty())
                    t.right.unit = static_cast<int32_t>(d.gen(t.hat).right);
                uint32_t col = w * n + (l - 1);
                for (const TensorWord& tw : res.iota(t).terms)
                    iota_m.set(mid_index(tw), col);
            }
        row.rank_iota = gf2_rank(iota_m);
        Gf2Matrix mu_m(static_cast<uint32_t>(nwords), static_cast<uint32_t>(row.dim_mid));
        for (uint32_t w = 0; w < nwords; ++w)
            for (uint32_t i = 0; i <= n; ++i) {
                TensorWord t;
                t.left.letters.assign(words[w].letters.begin(), words[w].letters.begin() + i);
                t.right.letters.assign(words[w].letters.begin() + i, words[w].letters.end());
                if (t.left.empty())
                    t.left.unit = static_cast<int32_t>(d.word_left(words[w]));
                if (t.right.empty())
                    t.right.unit = static_cast<int32_t>(d.word_right(words[w]));
                for (const Word& prod : res.mult(t).words)
                    mu_m.set(word_index.at(prod), w * (n + 1) + i);
            }
        row.rank_mu = gf2_rank(mu_m);
        bool iota_injective = (row.rank_iota == row.dim_hat);
        bool mu_surjective = (row.rank_mu == row.dim_alg);
        bool middle_exact = (row.dim_mid - row.rank_mu == row.rank_iota);
        row.exact = iota_injective && mu_surjective && middle_exact;
        return row;
    }
}

ExactnessReport length_graded_exactness(const Dga& d, uint32_t max_len)
{
    ExactnessReport rep;
    rep.pass = true;
    for (uint32_t n = 0; n <= max_len; ++n) {
        rep.rows.push_back(exactness_at_length(d, n));
        rep.pass = rep.pass && rep.rows.back().exact;
    }
    return rep;
}

std::string ExactnessReport::to_string() const
{
    std::ostringstream os;
    os << "len  dim(ACA)  dim(AA)  dim(A)  rk(iota)  rk(mu)  exact\n";
    for (const auto& r : rows)
        os << r.length << "    " << r.dim_hat << "  " << r.dim_mid << "  " << r.dim_alg << "  "
           << r.rank_iota << "  " << r.rank_mu << "  " << (r.exact ? "yes" : "NO") << "\n";
    os << (pass ? "PASS" : "FAIL");
    return os.str();
}

} // namespace cedga
