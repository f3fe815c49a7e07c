#include "cedga/io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace cedga {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw error("cannot write file: " + path);
    out << text;
}

json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw error("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

Gf2Matrix matrix_from_json(const json& j, uint32_t rows, uint32_t cols)
{
    Gf2Matrix m(rows, cols);
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2)
            throw error("matrix entries must be [row, col] pairs");
        uint32_t r = entry[0].get<uint32_t>();
        uint32_t c = entry[1].get<uint32_t>();
        if (r >= rows || c >= cols)
            throw error("matrix entry out of range");
        m.set(r, c);
    }
    return m;
}

json matrix_to_json(const Gf2Matrix& m)
{
    json j = json::array();
    for (uint32_t r = 0; r < m.rows; ++r)
        for (uint32_t c : m.row[r])
            j.push_back(json::array({r, c}));
    return j;
}

GradingSpec grading_from_json(const json& j)
{
    if (j.is_string() && j.get<std::string>() == "Z")
        return GradingSpec::z();
    if (j.is_object() && j.contains("Zmod"))
        return GradingSpec::zmod(j["Zmod"].get<int64_t>());
    throw error("grading must be \"Z\" or {\"Zmod\": n}");
}

json grading_to_json(const GradingSpec& g)
{
    if (g.kind == GradingSpec::Kind::Z)
        return "Z";
    return json{{"Zmod", g.modulus}};
}

} // namespace

Rational parse_rational(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(std::stoll(s));
        long long p = std::stoll(s.substr(0, slash));
        long long q = std::stoll(s.substr(slash + 1));
        if (q == 0)
            throw error("zero denominator in rational: " + s);
        return Rational(p, q);
    } catch (const std::invalid_argument&) {
        throw error("malformed rational: " + s);
    } catch (const std::out_of_range&) {
        throw error("rational out of range: " + s);
    }
}

std::string rational_to_string(const Rational& r)
{
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/******** Dga ********/

Dga parse_dga(const std::string& text)
{
    json j = parse_json(text);
    Dga d;
    if (!j.contains("ring") || !j["ring"].contains("idempotents"))
        throw error("missing ring.idempotents");
    d.ring = IdempotentRing(j["ring"]["idempotents"].get<std::vector<std::string>>());
    d.grading = j.contains("grading") ? grading_from_json(j["grading"]) : GradingSpec::z();
    d.slashed = j.value("slashed", false);

    bool all_have_actions = true;
    for (const auto& gj : j.value("generators", json::array())) {
        Generator g;
        g.name = gj.at("name").get<std::string>();
        g.degree = gj.at("degree").get<int64_t>();
        g.left = d.ring.index_of(gj.at("left").get<std::string>());
        g.right = d.ring.index_of(gj.at("right").get<std::string>());
        if (gj.contains("action"))
            g.action = parse_rational(gj["action"].get<std::string>());
        else
            all_have_actions = false;
        g.kind = gj.contains("kind") ? gen_kind_from_string(gj["kind"].get<std::string>())
                                     : GenKind::Chord;
        d.generators.push_back(g);
        d.differential.emplace_back();
    }
    d.actions_in_use = all_have_actions;

    json diff_obj = j.value("differential", json::object());
    for (const auto& [name, words] : diff_obj.items()) {
        uint32_t id;
        try {
            id = d.gen_index(name);
        } catch (const error&) {
            throw error("differential of unknown generator: " + name);
        }
        std::vector<Word> ws;
        for (const auto& wj : words) {
            Word w;
            if (wj.is_object()) {
                if (!wj.contains("at"))
                    throw error("unit term must be {\"at\": idempotent}");
                w.unit = static_cast<int32_t>(d.ring.index_of(wj["at"].get<std::string>()));
            } else if (wj.is_array()) {
                for (const auto& lj : wj) {
                    std::string lname = lj.get<std::string>();
                    try {
                        w.letters.push_back(d.gen_index(lname));
                    } catch (const error&) {
                        throw error("word in d(" + name + ") references undefined generator " +
                                    lname);
                    }
                }
            } else {
                throw error("word must be an array of names or a unit term");
            }
            ws.push_back(std::move(w));
        }
        d.differential[id] = Element(std::move(ws));
    }

    if (j.contains("ordering")) {
        CopyOrdering ord;
        for (const auto& oj : j["ordering"]) {
            std::string copy = oj.at("copy").get<std::string>();
            if (d.ring.index_of(copy) != ord.base_labels.size())
                throw error("ordering entries must follow the ring order");
            ord.base_labels.push_back(oj.at("base").get<std::string>());
            ord.index.push_back(oj.at("index").get<uint32_t>());
            ord.potential.push_back(oj.value("potential", 0));
        }
        if (ord.base_labels.size() != d.ring.size())
            throw error("ordering must cover the whole ring");
        d.ordering = ord;
    }
    return canonical_form(d);
}

std::string serialize_dga(const Dga& dga)
{
    Dga d = canonical_form(dga);
    json j;
    j["ring"] = {{"idempotents", d.ring.labels}};
    j["grading"] = grading_to_json(d.grading);
    j["slashed"] = d.slashed;
    json gens = json::array();
    for (const auto& g : d.generators) {
        json gj;
        gj["name"] = g.name;
        gj["degree"] = g.degree;
        gj["left"] = d.ring.labels[g.left];
        gj["right"] = d.ring.labels[g.right];
        if (d.actions_in_use)
            gj["action"] = rational_to_string(g.action);
        gj["kind"] = to_string(g.kind);
        gens.push_back(gj);
    }
    j["generators"] = gens;
    json diff = json::object();
    for (uint32_t id = 0; id < d.gen_count(); ++id) {
        if (d.differential[id].is_zero())
            continue;
        json words = json::array();
        for (const Word& w : d.differential[id].words) {
            if (w.empty()) {
                if (w.unit < 0)
                    words.push_back(json::array());
                else
                    words.push_back(json{{"at", d.ring.labels[static_cast<uint32_t>(w.unit)]}});
            } else {
                json wj = json::array();
                for (uint32_t l : w.letters)
                    wj.push_back(d.gen(l).name);
                words.push_back(wj);
            }
        }
        diff[d.gen(id).name] = words;
    }
    j["differential"] = diff;
    if (d.ordering) {
        json oj = json::array();
        for (uint32_t c = 0; c < d.ring.size(); ++c)
            oj.push_back(json{{"copy", d.ring.labels[c]},
                              {"base", d.ordering->base_labels[c]},
                              {"index", d.ordering->index[c]},
                              {"potential", d.ordering->potential[c]}});
        j["ordering"] = oj;
    }
    return j.dump(2) + "\n";
}

Dga load_dga(const std::string& path)
{
    return parse_dga(read_file(path));
}

void save_dga(const Dga& d, const std::string& path)
{
    write_file(path, serialize_dga(d));
}

/******** chain complexes ********/

ChainComplex parse_complex(const std::string& text)
{
    json j = parse_json(text);
    ChainComplex c;
    c.grading = j.contains("grading") ? grading_from_json(j["grading"]) : GradingSpec::z();
    for (const auto& bj : j.value("basis", json::array()))
        c.basis.push_back({bj.at("label").get<std::string>(), bj.at("degree").get<int64_t>()});
    c.d = matrix_from_json(j.value("d", json::array()), c.dim(), c.dim());
    c.validate();
    return c;
}

std::string serialize_complex(const ChainComplex& c)
{
    json j;
    j["grading"] = grading_to_json(c.grading);
    json basis = json::array();
    for (const auto& b : c.basis)
        basis.push_back(json{{"label", b.label}, {"degree", b.degree}});
    j["basis"] = basis;
    j["d"] = matrix_to_json(c.d);
    return j.dump(2) + "\n";
}

ChainComplex load_complex(const std::string& path)
{
    return parse_complex(read_file(path));
}

/******** modules ********/

DgModule parse_module(const std::string& text, const Dga& over)
{
    json j = parse_json(text);
    DgModule m;
    m.over = over;
    for (const auto& bj : j.value("basis", json::array())) {
        ModuleBasisVector v;
        v.label = bj.at("label").get<std::string>();
        v.degree = bj.at("degree").get<int64_t>();
        if (bj.contains("idempotent"))
            v.idempotent = over.ring.index_of(bj["idempotent"].get<std::string>());
        m.basis.push_back(v);
    }
    m.d = matrix_from_json(j.value("d", json::array()), m.dim(), m.dim());
    m.act.assign(over.gen_count(), Gf2Matrix(m.dim(), m.dim()));
    json act_obj = j.value("act", json::object());
    for (const auto& [name, mat] : act_obj.items())
        m.act[over.gen_index(name)] = matrix_from_json(mat, m.dim(), m.dim());
    m.validate();
    return m;
}

std::string serialize_module(const DgModule& m)
{
    json j;
    json basis = json::array();
    for (const auto& b : m.basis) {
        json bj{{"label", b.label}, {"degree", b.degree}};
        if (!m.over.slashed)
            bj["idempotent"] = m.over.ring.labels[b.idempotent];
        basis.push_back(bj);
    }
    j["basis"] = basis;
    j["d"] = matrix_to_json(m.d);
    json act = json::object();
    for (uint32_t g = 0; g < m.over.gen_count(); ++g)
        if (!m.act[g].is_zero())
            act[m.over.gen(g).name] = matrix_to_json(m.act[g]);
    j["act"] = act;
    return j.dump(2) + "\n";
}

DgModule load_module(const std::string& path, const Dga& over)
{
    return parse_module(read_file(path), over);
}

/******** cap specs ********/

CapSpec load_capspec(const std::string& path)
{
    json j = parse_json(read_file(path));
    CapSpec spec;
    std::string base_ref = j.at("base").get<std::string>();
    std::filesystem::path p = std::filesystem::path(path).parent_path() / base_ref;
    spec.base = load_dga(p.string());
    json counts_obj = j.at("counts");
    for (const auto& [s, k] : counts_obj.items())
        spec.copies.counts[s] = k.get<uint32_t>();
    json pots_obj = j.value("potentials", json::object());
    for (const auto& [s, ps] : pots_obj.items())
        spec.copies.potentials[s] = ps.get<std::vector<int64_t>>();
    return spec;
}

/******** augmentations ********/

std::string serialize_augmentation(const Dga& d, const Augmentation& eps)
{
    json values = json::object();
    for (uint32_t g = 0; g < d.gen_count(); ++g) {
        uint8_t bit = 0;
        if (eps.form == Augmentation::Form::Scalar)
            bit = eps.scalar.at(g);
        else
            bit = eps.ke.at(g).is_zero() ? 0 : 1;
        if (bit)
            values[d.gen(g).name] = 1;
    }
    return json{{"values", values}}.dump(2) + "\n";
}

Augmentation parse_augmentation(const std::string& text, const Dga& d)
{
    json j = parse_json(text);
    Augmentation eps;
    if (d.slashed) {
        eps.form = Augmentation::Form::Scalar;
        eps.scalar.assign(d.gen_count(), 0);
    } else {
        eps.form = Augmentation::Form::Ke;
        eps.ke.assign(d.gen_count(), KeElement::zero());
    }
    json values_obj = j.value("values", json::object());
    for (const auto& [name, bit] : values_obj.items()) {
        uint32_t g = d.gen_index(name);
        if (bit.get<int>() == 0)
            continue;
        if (d.slashed)
            eps.scalar[g] = 1;
        else
            eps.ke[g] = KeElement::pure(d.gen(g).left, d.gen(g).right);
    }
    return eps;
}

} // namespace cedga
