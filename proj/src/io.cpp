#include "rvm/io.hpp"

#include <fstream>
#include <sstream>

namespace rvm {

namespace {

// Line-oriented scanner so every error can name its line.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // Next nonblank line; throws if the stream ends first.
    std::string next(const std::string& what) {
        std::string line;
        while (std::getline(in_, line)) {
            ++lineno_;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
        }
        throw ParseError(lineno_ + 1, "unexpected end of input, expected " + what);
    }

    int lineno() const { return lineno_; }

private:
    std::istream& in_;
    int lineno_ = 0;
};

std::vector<long long> parse_ints(const std::string& line, int lineno) {
    std::vector<long long> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        try {
            size_t used = 0;
            long long v = std::stoll(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ParseError(lineno, "expected integer, got '" + tok + "'");
        }
    }
    return out;
}

}  // namespace

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

Graph read_graph(std::istream& in) {
    LineReader reader(in);
    std::string header = reader.next("graph header 'n m'");
    auto nm = parse_ints(header, reader.lineno());
    if (nm.size() != 2) throw ParseError(reader.lineno(), "graph header must be 'n m'");
    long long n = nm[0], m = nm[1];
    if (n < 0 || m < 0) throw ParseError(reader.lineno(), "negative graph header");
    Graph g(static_cast<int>(n));
    for (long long i = 0; i < m; ++i) {
        std::string line = reader.next("edge line");
        auto uv = parse_ints(line, reader.lineno());
        if (uv.size() != 2) throw ParseError(reader.lineno(), "edge line must be 'u v'");
        try {
            g.add_edge(static_cast<int>(uv[0]), static_cast<int>(uv[1]));
        } catch (const std::invalid_argument& e) {
            throw ParseError(reader.lineno(), e.what());
        }
    }
    return g;
}

Permutation read_permutation(std::istream& in) {
    LineReader reader(in);
    std::string header = reader.next("permutation header 'n'");
    auto hn = parse_ints(header, reader.lineno());
    if (hn.size() != 1 || hn[0] < 0)
        throw ParseError(reader.lineno(), "permutation header must be a single size");
    int n = static_cast<int>(hn[0]);
    std::vector<int> image;
    image.reserve(n);
    while (static_cast<int>(image.size()) < n) {
        std::string line = reader.next("permutation entries");
        for (long long v : parse_ints(line, reader.lineno())) {
            if (static_cast<int>(image.size()) == n)
                throw ParseError(reader.lineno(), "too many permutation entries");
            image.push_back(static_cast<int>(v));
        }
    }
    try {
        return Permutation(std::move(image));
    } catch (const std::invalid_argument& e) {
        throw ParseError(reader.lineno(), e.what());
    }
}

Schedule read_schedule(std::istream& in) {
    LineReader reader(in);
    std::string header = reader.next("schedule header 'k'");
    auto hk = parse_ints(header, reader.lineno());
    if (hk.size() != 1 || hk[0] < 0)
        throw ParseError(reader.lineno(), "schedule header must be a single step count");
    Schedule schedule;
    for (long long s = 0; s < hk[0]; ++s) {
        std::string line = reader.next("step line");
        MatchingStep step;
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) {
            size_t dash = tok.find('-', 1);  // skip index 0 so "-3" fails as a token
            if (dash == std::string::npos)
                throw ParseError(reader.lineno(), "expected 'u-v' token, got '" + tok + "'");
            try {
                size_t used_u = 0, used_v = 0;
                int u = std::stoi(tok.substr(0, dash), &used_u);
                int v = std::stoi(tok.substr(dash + 1), &used_v);
                if (used_u != dash || used_v != tok.size() - dash - 1 || u < 0 || v < 0)
                    throw std::invalid_argument(tok);
                step.pairs.emplace_back(u, v);
            } catch (const std::exception&) {
                throw ParseError(reader.lineno(), "expected 'u-v' token, got '" + tok + "'");
            }
        }
        if (step.empty()) throw ParseError(reader.lineno(), "step line has no pairs");
        schedule.append(step);
    }
    return schedule;
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.n() << ' ' << g.m() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_permutation(std::ostream& out, const Permutation& pi) {
    out << pi.n() << '\n';
    for (int i = 0; i < pi.n(); ++i) out << pi(i) << '\n';
}

void write_schedule(std::ostream& out, const Schedule& schedule) {
    out << schedule.length() << '\n';
    for (const auto& step : schedule.steps) {
        for (size_t i = 0; i < step.pairs.size(); ++i) {
            if (i) out << ' ';
            out << step.pairs[i].first << '-' << step.pairs[i].second;
        }
        out << '\n';
    }
}

namespace {

template <typename T, typename Reader>
T read_file_with(const std::string& path, Reader reader) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return reader(in);
}

template <typename T, typename Writer>
void write_file_with(const std::string& path, const T& value, Writer writer) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    writer(out, value);
}

}  // namespace

Graph read_graph_file(const std::string& path) {
    return read_file_with<Graph>(path, [](std::istream& in) { return read_graph(in); });
}

Permutation read_permutation_file(const std::string& path) {
    return read_file_with<Permutation>(
        path, [](std::istream& in) { return read_permutation(in); });
}

Schedule read_schedule_file(const std::string& path) {
    return read_file_with<Schedule>(path,
                                    [](std::istream& in) { return read_schedule(in); });
}

void write_graph_file(const std::string& path, const Graph& g) {
    write_file_with(path, g, [](std::ostream& out, const Graph& v) { write_graph(out, v); });
}

void write_permutation_file(const std::string& path, const Permutation& pi) {
    write_file_with(path, pi,
                    [](std::ostream& out, const Permutation& v) { write_permutation(out, v); });
}

void write_schedule_file(const std::string& path, const Schedule& schedule) {
    write_file_with(path, schedule,
                    [](std::ostream& out, const Schedule& v) { write_schedule(out, v); });
}

std::vector<int> read_coloring(std::istream& in, int n) {
    std::vector<int> color(n, -1);
    std::string line;
    int lineno = 0;
    int assigned = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto vc = parse_ints(line, lineno);
        if (vc.size() != 2) throw ParseError(lineno, "coloring line must be 'v color'");
        long long v = vc[0], c = vc[1];
        if (v < 0 || v >= n) throw ParseError(lineno, "vertex out of range");
        if (c < 0) throw ParseError(lineno, "color must be nonnegative");
        if (color[v] != -1) throw ParseError(lineno, "vertex colored twice");
        color[v] = static_cast<int>(c);
        ++assigned;
    }
    if (assigned != n) throw ParseError(lineno + 1, "not every vertex received a color");
    return color;
}

std::vector<int> read_coloring_file(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_coloring(in, n);
}

void write_coloring(std::ostream& out, const std::vector<int>& color) {
    for (size_t v = 0; v < color.size(); ++v) out << v << ' ' << color[v] << '\n';
}

std::vector<std::vector<int>> read_partition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::vector<int>> parts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto vals = parse_ints(line, lineno);
        if (vals.empty()) throw ParseError(lineno, "empty partition line");
        std::vector<int> part;
        for (long long v : vals) {
            if (v < 0) throw ParseError(lineno, "negative vertex");
            part.push_back(static_cast<int>(v));
        }
        parts.push_back(std::move(part));
    }
    return parts;
}

}  // namespace rvm
