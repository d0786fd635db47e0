#ifndef TAGMUX_IO_HPP
#define TAGMUX_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "tagmux/hybrid.hpp"
#include "tagmux/multiplex.hpp"
#include "tagmux/seq.hpp"

namespace tagmux {

// All text formats share the same conventions: '#' starts a comment,
// blank lines are ignored, sequences are uppercase {A,C,G,T}.

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, int line, const std::string& what);
    const std::string& source() const { return source_; }
    int line() const { return line_; }

private:
    std::string source_;
    int line_ = 0;
};

// Tag list: one tag per line.
std::vector<DnaSeq> read_tags(std::istream& in, const std::string& source = "<stream>");
std::vector<DnaSeq> read_tag_file(const std::string& path);
void write_tags(std::ostream& out, const std::vector<DnaSeq>& tags);
void write_tag_file(const std::string& path, const std::vector<DnaSeq>& tags);

// Pool list, one pool per line: pool_id<TAB>primer1,primer2,...
std::vector<Pool> read_pools(std::istream& in, const std::string& source = "<stream>");
std::vector<Pool> read_pool_file(const std::string& path);
void write_pools(std::ostream& out, const std::vector<Pool>& pools);
void write_pool_file(const std::string& path, const std::vector<Pool>& pools);

// Assignment rows: array<TAB>pool_id<TAB>primer_seq<TAB>tag_index<TAB>tag_seq
// with arrays and tag indices numbered from 1.
void write_assignment(std::ostream& out, const AssignmentPlan& plan,
                      const std::vector<Pool>& pools, const std::vector<DnaSeq>& tags);
void write_assignment_file(const std::string& path, const AssignmentPlan& plan,
                           const std::vector<Pool>& pools, const std::vector<DnaSeq>& tags);
AssignmentPlan read_assignment(std::istream& in, const std::vector<Pool>& pools,
                               const std::vector<DnaSeq>& tags,
                               const std::string& source = "<stream>");
AssignmentPlan read_assignment_file(const std::string& path, const std::vector<Pool>& pools,
                                    const std::vector<DnaSeq>& tags);

} // namespace tagmux

#endif // TAGMUX_IO_HPP
