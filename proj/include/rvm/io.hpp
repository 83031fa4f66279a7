#ifndef RVM_IO_HPP
#define RVM_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "rvm/graph.hpp"
#include "rvm/permutation.hpp"
#include "rvm/schedule.hpp"

namespace rvm {

// All parse failures carry the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

// Graph file:      "n m" then m lines "u v".
// Permutation file:"n" then the n images (any whitespace layout).
// Schedule file:   "k" then k lines of space-separated "u-v" tokens, one
//                  line per step, each with at least one token.
Graph read_graph(std::istream& in);
Permutation read_permutation(std::istream& in);
Schedule read_schedule(std::istream& in);

void write_graph(std::ostream& out, const Graph& g);
void write_permutation(std::ostream& out, const Permutation& pi);
void write_schedule(std::ostream& out, const Schedule& schedule);

Graph read_graph_file(const std::string& path);
Permutation read_permutation_file(const std::string& path);
Schedule read_schedule_file(const std::string& path);

void write_graph_file(const std::string& path, const Graph& g);
void write_permutation_file(const std::string& path, const Permutation& pi);
void write_schedule_file(const std::string& path, const Schedule& schedule);

// Vertex coloring file: one "v color" pair per line, every vertex exactly once.
std::vector<int> read_coloring(std::istream& in, int n);
std::vector<int> read_coloring_file(const std::string& path, int n);
void write_coloring(std::ostream& out, const std::vector<int>& color);

// Partition file: one line per part, "port v1 v2 ...". Lines are returned
// verbatim; the first entry of each is the part's port vertex.
std::vector<std::vector<int>> read_partition_file(const std::string& path);

}  // namespace rvm

#endif
