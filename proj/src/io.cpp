#include "qsr/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace qsr {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) tokens.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

long long parse_nonneg_int(const std::string& text, int line, const char* what) {
    if (text.empty()) throw ParseError(line, std::string("missing ") + what);
    long long value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') throw ParseError(line, std::string("malformed ") + what + " '" + text + "'");
        value = value * 10 + (c - '0');
        if (value > (1LL << 40)) throw ParseError(line, std::string(what) + " out of range");
    }
    return value;
}

} // namespace

QuiverSetup parse_quiver_file(std::string_view text) {
    struct PendingEdge {
        std::string tail, head;
        int line;
    };
    QuiverSetup setup;
    std::unordered_map<std::string, int> index;
    std::vector<PendingEdge> pending;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const std::vector<std::string> tokens = tokenize(line);
        if (tokens.empty()) continue;

        if (tokens[0] == "vertex") {
            if (tokens.size() != 4)
                throw ParseError(line_no, "expected: vertex <id> dim=<int> alpha=<rational>");
            const std::string& id = tokens[1];
            if (index.count(id)) throw ParseError(line_no, "duplicate vertex id '" + id + "'");
            long long dim = -1;
            std::optional<Rational> alpha;
            for (std::size_t i = 2; i < 4; ++i) {
                const std::string& kv = tokens[i];
                if (kv.rfind("dim=", 0) == 0) {
                    dim = parse_nonneg_int(kv.substr(4), line_no, "dimension");
                } else if (kv.rfind("alpha=", 0) == 0) {
                    alpha = Rational::parse(kv.substr(6));
                    if (!alpha)
                        throw ParseError(line_no, "malformed rational '" + kv.substr(6) +
                                                      "' (use p or p/q)");
                } else {
                    throw ParseError(line_no, "unknown attribute '" + kv + "'");
                }
            }
            if (dim < 0) throw ParseError(line_no, "vertex is missing dim=");
            if (!alpha) throw ParseError(line_no, "vertex is missing alpha=");
            index.emplace(id, setup.quiver.vertex_count());
            setup.quiver.vertices.push_back(id);
            setup.dims.v.push_back(dim);
            setup.alpha.alpha.push_back(*alpha);
        } else if (tokens[0] == "edge") {
            if (tokens.size() != 4 || tokens[2] != "->")
                throw ParseError(line_no, "expected: edge <tail-id> -> <head-id>");
            pending.push_back({tokens[1], tokens[3], line_no});
        } else {
            throw ParseError(line_no, "unknown directive '" + tokens[0] + "'");
        }
    }

    for (const PendingEdge& e : pending) {
        const auto t = index.find(e.tail);
        if (t == index.end()) throw ParseError(e.line, "unknown vertex '" + e.tail + "'");
        const auto h = index.find(e.head);
        if (h == index.end()) throw ParseError(e.line, "unknown vertex '" + e.head + "'");
        setup.quiver.edges.push_back({t->second, h->second});
    }
    return setup;
}

std::string serialize_quiver_file(const QuiverSetup& setup) {
    std::ostringstream out;
    for (std::size_t j = 0; j < setup.quiver.vertices.size(); ++j)
        out << "vertex " << setup.quiver.vertices[j] << " dim=" << setup.dims[j]
            << " alpha=" << setup.alpha[j].str() << "\n";
    for (const Edge& e : setup.quiver.edges)
        out << "edge " << setup.quiver.vertices[static_cast<std::size_t>(e.tail)] << " -> "
            << setup.quiver.vertices[static_cast<std::size_t>(e.head)] << "\n";
    return out.str();
}

Representation representation_from_json(const nlohmann::json& doc, const Quiver& quiver,
                                        const DimensionVector& dims) {
    if (!doc.is_object() || !doc.contains("dims") || !doc.contains("edges"))
        throw DomainError("representation file must have 'dims' and 'edges'");

    const auto& jdims = doc.at("dims");
    if (!jdims.is_object()) throw DomainError("'dims' must map vertex ids to integers");
    if (jdims.size() != quiver.vertices.size())
        throw DomainError("representation dims cover " + std::to_string(jdims.size()) +
                          " vertices, quiver has " + std::to_string(quiver.vertices.size()));
    for (std::size_t j = 0; j < quiver.vertices.size(); ++j) {
        const std::string& id = quiver.vertices[j];
        if (!jdims.contains(id)) throw DomainError("representation dims missing vertex '" + id + "'");
        if (jdims.at(id).get<long long>() != dims[j])
            throw DomainError("representation dimension at vertex '" + id +
                              "' does not match the quiver file");
    }

    const auto& jedges = doc.at("edges");
    if (!jedges.is_array() || jedges.size() != quiver.edges.size())
        throw DomainError("representation must list exactly " +
                          std::to_string(quiver.edges.size()) + " edges in quiver order");

    Representation rep(quiver, dims);
    for (std::size_t a = 0; a < quiver.edges.size(); ++a) {
        const auto& je = jedges.at(a);
        const Edge& e = quiver.edges[a];
        const std::string tail = je.at("tail").get<std::string>();
        const std::string head = je.at("head").get<std::string>();
        if (tail != quiver.vertices[static_cast<std::size_t>(e.tail)] ||
            head != quiver.vertices[static_cast<std::size_t>(e.head)])
            throw DomainError("edge " + std::to_string(a) +
                              " endpoints do not match the quiver file's edge order");
        const auto& jm = je.at("matrix");
        const long long rows = rep.rows(static_cast<int>(a));
        const long long cols = rep.cols(static_cast<int>(a));
        if (!jm.is_array() || static_cast<long long>(jm.size()) != rows)
            throw DomainError("edge " + std::to_string(a) + ": matrix must have " +
                              std::to_string(rows) + " rows");
        auto m = rep.matrix(static_cast<int>(a));
        for (long long r = 0; r < rows; ++r) {
            const auto& jrow = jm.at(static_cast<std::size_t>(r));
            if (!jrow.is_array() || static_cast<long long>(jrow.size()) != cols)
                throw DomainError("edge " + std::to_string(a) + ": matrix row " +
                                  std::to_string(r) + " must have " + std::to_string(cols) +
                                  " entries");
            for (long long c = 0; c < cols; ++c) {
                const auto& jz = jrow.at(static_cast<std::size_t>(c));
                if (!jz.is_array() || jz.size() != 2)
                    throw DomainError("matrix entries must be [re, im] pairs");
                const double re = jz.at(0).get<double>();
                const double im = jz.at(1).get<double>();
                if (!std::isfinite(re) || !std::isfinite(im))
                    throw DomainError("matrix entries must be finite");
                m(r, c) = Complex(re, im);
            }
        }
    }
    return rep;
}

nlohmann::json representation_to_json(const Representation& rep) {
    nlohmann::json doc;
    doc["dims"] = nlohmann::json::object();
    for (std::size_t j = 0; j < rep.quiver().vertices.size(); ++j)
        doc["dims"][rep.quiver().vertices[j]] = rep.dims()[j];
    doc["edges"] = nlohmann::json::array();
    for (int a = 0; a < rep.edge_count(); ++a) {
        const Edge& e = rep.quiver().edges[static_cast<std::size_t>(a)];
        nlohmann::json je;
        je["tail"] = rep.quiver().vertices[static_cast<std::size_t>(e.tail)];
        je["head"] = rep.quiver().vertices[static_cast<std::size_t>(e.head)];
        nlohmann::json jm = nlohmann::json::array();
        const auto m = rep.matrix(a);
        for (long long r = 0; r < m.rows(); ++r) {
            nlohmann::json jrow = nlohmann::json::array();
            for (long long c = 0; c < m.cols(); ++c)
                jrow.push_back({m(r, c).real(), m(r, c).imag()});
            jm.push_back(std::move(jrow));
        }
        je["matrix"] = std::move(jm);
        doc["edges"].push_back(std::move(je));
    }
    return doc;
}

double round12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

} // namespace qsr
