#include "tagmux/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace tagmux {

namespace {

std::string strip(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string strip_comment(const std::string& line) {
    const auto hash = line.find('#');
    return strip(hash == std::string::npos ? line : line.substr(0, hash));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

DnaSeq parse_seq(const std::string& text, const std::string& source, int line) {
    try {
        return DnaSeq(text);
    } catch (const std::invalid_argument& e) {
        throw ParseError(source, line, e.what());
    }
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

} // namespace

ParseError::ParseError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
      source_(source),
      line_(line) {}

std::vector<DnaSeq> read_tags(std::istream& in, const std::string& source) {
    std::vector<DnaSeq> tags;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = strip_comment(line);
        if (body.empty()) continue;
        tags.push_back(parse_seq(body, source, lineno));
    }
    return tags;
}

std::vector<DnaSeq> read_tag_file(const std::string& path) {
    auto in = open_input(path);
    return read_tags(in, path);
}

void write_tags(std::ostream& out, const std::vector<DnaSeq>& tags) {
    for (const DnaSeq& t : tags) out << t.str() << '\n';
}

void write_tag_file(const std::string& path, const std::vector<DnaSeq>& tags) {
    auto out = open_output(path);
    write_tags(out, tags);
}

std::vector<Pool> read_pools(std::istream& in, const std::string& source) {
    std::vector<Pool> pools;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = strip_comment(line);
        if (body.empty()) continue;
        const std::vector<std::string> fields = split(body, '\t');
        if (fields.size() != 2)
            throw ParseError(source, lineno, "expected pool_id<TAB>primer1,primer2,...");
        Pool pool;
        pool.id = strip(fields[0]);
        if (pool.id.empty()) throw ParseError(source, lineno, "empty pool id");
        for (const std::string& part : split(fields[1], ',')) {
            const std::string primer = strip(part);
            if (primer.empty()) throw ParseError(source, lineno, "empty primer");
            pool.primers.push_back(parse_seq(primer, source, lineno));
        }
        if (pool.primers.empty()) throw ParseError(source, lineno, "pool has no primers");
        pools.push_back(std::move(pool));
    }
    return pools;
}

std::vector<Pool> read_pool_file(const std::string& path) {
    auto in = open_input(path);
    return read_pools(in, path);
}

void write_pools(std::ostream& out, const std::vector<Pool>& pools) {
    for (const Pool& pool : pools) {
        out << pool.id << '\t';
        for (std::size_t i = 0; i < pool.primers.size(); ++i) {
            if (i) out << ',';
            out << pool.primers[i].str();
        }
        out << '\n';
    }
}

void write_pool_file(const std::string& path, const std::vector<Pool>& pools) {
    auto out = open_output(path);
    write_pools(out, pools);
}

void write_assignment(std::ostream& out, const AssignmentPlan& plan,
                      const std::vector<Pool>& pools, const std::vector<DnaSeq>& tags) {
    out << "# array\tpool_id\tprimer_seq\ttag_index\ttag_seq\n";
    for (const PlanEntry& e : plan.entries) {
        const Pool& pool = pools[e.pool];
        out << e.array << '\t' << pool.id << '\t'
            << pool.primers[e.primer_in_pool].str() << '\t' << (e.tag + 1) << '\t'
            << tags[e.tag].str() << '\n';
    }
}

void write_assignment_file(const std::string& path, const AssignmentPlan& plan,
                           const std::vector<Pool>& pools, const std::vector<DnaSeq>& tags) {
    auto out = open_output(path);
    write_assignment(out, plan, pools, tags);
}

AssignmentPlan read_assignment(std::istream& in, const std::vector<Pool>& pools,
                               const std::vector<DnaSeq>& tags, const std::string& source) {
    AssignmentPlan plan;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = strip_comment(line);
        if (body.empty()) continue;
        const std::vector<std::string> fields = split(body, '\t');
        if (fields.size() != 5)
            throw ParseError(source, lineno,
                             "expected array<TAB>pool_id<TAB>primer_seq<TAB>tag_index<TAB>tag_seq");
        PlanEntry e;
        try {
            e.array = std::stoi(fields[0]);
        } catch (const std::exception&) {
            throw ParseError(source, lineno, "bad array number: " + fields[0]);
        }
        const std::string pool_id = strip(fields[1]);
        const auto pool_it =
            std::find_if(pools.begin(), pools.end(),
                         [&](const Pool& p) { return p.id == pool_id; });
        if (pool_it == pools.end())
            throw ParseError(source, lineno, "unknown pool id: " + pool_id);
        e.pool = static_cast<std::uint32_t>(pool_it - pools.begin());

        const DnaSeq primer = parse_seq(strip(fields[2]), source, lineno);
        const auto primer_it =
            std::find(pool_it->primers.begin(), pool_it->primers.end(), primer);
        if (primer_it == pool_it->primers.end())
            throw ParseError(source, lineno, "primer not in pool " + pool_id);
        e.primer_in_pool = static_cast<std::uint32_t>(primer_it - pool_it->primers.begin());

        int tag_index = 0;
        try {
            tag_index = std::stoi(fields[3]);
        } catch (const std::exception&) {
            throw ParseError(source, lineno, "bad tag index: " + fields[3]);
        }
        if (tag_index < 1 || tag_index > static_cast<int>(tags.size()))
            throw ParseError(source, lineno, "tag index out of range: " + fields[3]);
        e.tag = static_cast<std::uint32_t>(tag_index - 1);
        if (tags[e.tag] != parse_seq(strip(fields[4]), source, lineno))
            throw ParseError(source, lineno, "tag sequence does not match tag index");
        plan.entries.push_back(e);
    }
    return plan;
}

AssignmentPlan read_assignment_file(const std::string& path, const std::vector<Pool>& pools,
                                    const std::vector<DnaSeq>& tags) {
    auto in = open_input(path);
    return read_assignment(in, pools, tags, path);
}

} // namespace tagmux
