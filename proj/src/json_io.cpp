#include "fconv/json_io.hpp"

#include <fstream>
#include <map>
#include <ostream>

#include <json.hpp>

namespace fconv {

using nlohmann::json;

namespace {

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw io_error(path + ": " + e.what());
    }
}

const json& field(const json& j, const std::string& path, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw io_error(path + ": missing field \"" + std::string(name) + "\"");
    return *it;
}

std::vector<std::string> string_list(const json& j, const std::string& path, const char* name) {
    if (!j.is_array()) throw io_error(path + ": field \"" + name + "\" must be an array");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string())
            throw io_error(path + ": field \"" + name + "\" must contain strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

FiniteDomain domain_from(const json& j, const std::string& path, const char* name) {
    try {
        return FiniteDomain(string_list(j, path, name));
    } catch (const std::invalid_argument& e) {
        throw io_error(path + ": field \"" + name + "\": " + e.what());
    }
}

}  // namespace

FunctionTable load_function_table(const std::string& path) {
    json j = parse_file(path);
    FiniteDomain l = domain_from(field(j, path, "L"), path, "L");
    FiniteDomain r = domain_from(field(j, path, "R"), path, "R");
    FiniteDomain t = domain_from(field(j, path, "T"), path, "T");

    const json& rows = field(j, path, "table");
    if (!rows.is_array() || static_cast<int>(rows.size()) != l.size())
        throw io_error(path + ": field \"table\" must have one row per L element");
    std::vector<int> table;
    table.reserve(static_cast<std::size_t>(l.size()) * static_cast<std::size_t>(r.size()));
    for (const auto& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != r.size())
            throw io_error(path + ": field \"table\" rows must have one entry per R element");
        for (const auto& cell : row) {
            if (!cell.is_string()) throw io_error(path + ": table entries must be T labels");
            int idx = t.find(cell.get<std::string>());
            if (idx < 0)
                throw io_error(path + ": table entry \"" + cell.get<std::string>() +
                               "\" is not a T label");
            table.push_back(idx);
        }
    }
    return FunctionTable::make(std::move(l), std::move(r), std::move(t), std::move(table));
}

void save_function_table(std::ostream& out, const FunctionTable& f) {
    json j;
    j["L"] = f.dom_l.labels();
    j["R"] = f.dom_r.labels();
    j["T"] = f.dom_t.labels();
    json rows = json::array();
    for (int a = 0; a < f.dom_l.size(); ++a) {
        json row = json::array();
        for (int b = 0; b < f.dom_r.size(); ++b) row.push_back(f.dom_t.label(f(a, b)));
        rows.push_back(std::move(row));
    }
    j["table"] = std::move(rows);
    out << j.dump(2) << "\n";
}

TensorFunction load_tensor(const std::string& path, const FunctionTable& f) {
    json j = parse_file(path);
    std::string name = field(j, path, "domain").get<std::string>();
    const FiniteDomain* domain = nullptr;
    if (name == "L") domain = &f.dom_l;
    else if (name == "R") domain = &f.dom_r;
    else if (name == "T") domain = &f.dom_t;
    else throw io_error(path + ": field \"domain\" must be \"L\", \"R\" or \"T\"");

    const json& nj = field(j, path, "n");
    if (!nj.is_number_integer() || nj.get<int>() < 0)
        throw io_error(path + ": field \"n\" must be a non-negative integer");
    int n = nj.get<int>();
    auto radices = uniform_radices(domain->size(), n);
    std::size_t cells = radix_product(radices);

    std::vector<Int> values(cells, 0);
    if (j.contains("values")) {
        const json& vals = j["values"];
        if (!vals.is_array() || vals.size() != cells)
            throw io_error(path + ": field \"values\" must have exactly |D|^n entries");
        std::size_t i = 0;
        for (const auto& v : vals) {
            if (!v.is_number_integer())
                throw io_error(path + ": field \"values\" must contain integers");
            values[i++] = v.get<Int>();
        }
    } else if (j.contains("entries")) {
        const json& entries = j["entries"];
        if (!entries.is_array()) throw io_error(path + ": field \"entries\" must be an array");
        std::vector<int> digits(static_cast<std::size_t>(n));
        for (const auto& e : entries) {
            const json& vv = field(e, path, "v");
            if (!vv.is_array() || static_cast<int>(vv.size()) != n)
                throw io_error(path + ": entry field \"v\" must list n labels");
            for (int c = 0; c < n; ++c) {
                const auto& lbl = vv[static_cast<std::size_t>(c)];
                if (!lbl.is_string()) throw io_error(path + ": entry labels must be strings");
                int idx = domain->find(lbl.get<std::string>());
                if (idx < 0)
                    throw io_error(path + ": entry label \"" + lbl.get<std::string>() +
                                   "\" is not in domain " + name);
                digits[static_cast<std::size_t>(c)] = idx;
            }
            const json& val = field(e, path, "val");
            if (!val.is_number_integer())
                throw io_error(path + ": entry field \"val\" must be an integer");
            values[flatten(digits, radices)] += val.get<Int>();
        }
    } else {
        throw io_error(path + ": tensor needs a \"values\" or \"entries\" field");
    }
    return TensorFunction::make(*domain, n, std::move(values));
}

void save_tensor(std::ostream& out, const TensorFunction& tensor, const std::string& domain_name) {
    json j;
    j["domain"] = domain_name;
    j["n"] = tensor.arity;
    j["values"] = tensor.values;
    out << j.dump() << "\n";
}

CyclicPartition load_partition(const std::string& path, const FunctionTable& f) {
    json j = parse_file(path);
    const json& minors = field(j, path, "minors");
    if (!minors.is_array()) throw io_error(path + ": field \"minors\" must be an array");

    CyclicPartition p;
    for (const auto& mj : minors) {
        CyclicMinor m;
        const json& kj = field(mj, path, "k");
        if (!kj.is_number_integer() || kj.get<int>() < 1)
            throw io_error(path + ": minor field \"k\" must be a positive integer");
        m.k = kj.get<int>();

        auto load_side = [&](const char* set_name, const char* sigma_name,
                             const FiniteDomain& dom, std::vector<int>& elems,
                             std::vector<int>& sigma) {
            auto labels = string_list(field(mj, path, set_name), path, set_name);
            const json& sj = field(mj, path, sigma_name);
            if (!sj.is_object())
                throw io_error(path + ": minor field \"" + sigma_name + "\" must be an object");
            std::map<int, int> by_index;
            for (const auto& lbl : labels) {
                int idx = dom.find(lbl);
                if (idx < 0)
                    throw io_error(path + ": minor label \"" + lbl + "\" is not in the domain");
                auto it = sj.find(lbl);
                if (it == sj.end() || !it->is_number_integer())
                    throw io_error(path + ": minor field \"" + sigma_name +
                                   "\" must map every label to an integer");
                by_index[idx] = it->get<int>();
            }
            for (auto [idx, s] : by_index) {
                elems.push_back(idx);
                sigma.push_back(s);
            }
        };
        load_side("A", "sigmaA", f.dom_l, m.rows_a, m.sigma_a);
        load_side("B", "sigmaB", f.dom_r, m.cols_b, m.sigma_b);

        for (const auto& lbl : string_list(field(mj, path, "sigmaC"), path, "sigmaC")) {
            int idx = f.dom_t.find(lbl);
            if (idx < 0)
                throw io_error(path + ": sigmaC label \"" + lbl + "\" is not a T label");
            m.sigma_c.push_back(idx);
        }
        p.minors.push_back(std::move(m));
    }
    return p;
}

void save_partition(std::ostream& out, const FunctionTable& f, const CyclicPartition& p) {
    json j;
    json minors = json::array();
    for (const auto& m : p.minors) {
        json mj;
        json a = json::array(), b = json::array(), c = json::array();
        json sa = json::object(), sb = json::object();
        for (std::size_t i = 0; i < m.rows_a.size(); ++i) {
            a.push_back(f.dom_l.label(m.rows_a[i]));
            sa[f.dom_l.label(m.rows_a[i])] = m.sigma_a[i];
        }
        for (std::size_t i = 0; i < m.cols_b.size(); ++i) {
            b.push_back(f.dom_r.label(m.cols_b[i]));
            sb[f.dom_r.label(m.cols_b[i])] = m.sigma_b[i];
        }
        for (int t : m.sigma_c) c.push_back(f.dom_t.label(t));
        mj["A"] = std::move(a);
        mj["B"] = std::move(b);
        mj["k"] = m.k;
        mj["sigmaA"] = std::move(sa);
        mj["sigmaB"] = std::move(sb);
        mj["sigmaC"] = std::move(c);
        minors.push_back(std::move(mj));
    }
    j["minors"] = std::move(minors);
    j["cost"] = partition_cost(p);
    out << j.dump(2) << "\n";
}

void export_dot(std::ostream& out, const FunctionTable& f,
                const std::vector<TwoRowDecomposition>& decompositions) {
    static const char* palette[] = {"red",    "blue",   "forestgreen", "orange",
                                    "purple", "brown",  "deeppink",    "teal",
                                    "gold3",  "navy",   "darkred",     "gray40"};
    out << "digraph representation {\n";
    for (std::size_t d = 0; d < decompositions.size(); ++d) {
        const auto& dec = decompositions[d];
        out << "  subgraph cluster_" << d << " {\n";
        out << "    label=\"rows (" << f.dom_l.label(dec.graph.ell0) << ","
            << f.dom_l.label(dec.graph.ell1) << ")\";\n";
        for (int v : dec.graph.vertices)
            out << "    v" << d << "_" << v << " [label=\"" << f.dom_t.label(v) << "\"];\n";
        for (std::size_t pi = 0; pi < dec.pieces.size(); ++pi) {
            const char* color = palette[pi % (sizeof(palette) / sizeof(palette[0]))];
            for (const auto& e : dec.pieces[pi].edges) {
                out << "    v" << d << "_" << e.tail << " -> v" << d << "_" << e.head
                    << " [color=" << color << ", label=\"";
                for (std::size_t r = 0; r < e.preimages.size(); ++r)
                    out << (r ? "," : "") << f.dom_r.label(e.preimages[r]);
                out << "\"];\n";
            }
        }
        out << "  }\n";
    }
    out << "}\n";
}

}  // namespace fconv
