#include "xrrmeta/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "xrrmeta/errors.hpp"

namespace xrrmeta {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, ',')) out.push_back(trim(cur));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

int parse_count(const std::string& field, const std::string& what, long line_no,
                const std::string& path) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(field, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != field.size() || field.empty())
        throw ValidationError(path + ":" + std::to_string(line_no) + ": " + what +
                              " is not an integer: '" + field + "'");
    return v;
}

}  // namespace

MetaDataset load_csv(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file: " + path);
    std::string line;
    long line_no = 0;
    bool saw_header = false;
    std::vector<StudyRecord> raw;
    std::unordered_set<std::string> seen_ids;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fields = split_fields(t);
        if (!saw_header) {
            const std::vector<std::string> expect = {"study_id", "n1", "y1", "n2", "y2"};
            if (fields.size() != expect.size())
                throw ValidationError(path + ":" + std::to_string(line_no) +
                                      ": expected header 'study_id,n1,y1,n2,y2'");
            for (std::size_t i = 0; i < expect.size(); ++i) {
                std::string f = fields[i];
                std::transform(f.begin(), f.end(), f.begin(),
                               [](unsigned char c) { return char(std::tolower(c)); });
                if (f != expect[i])
                    throw ValidationError(path + ":" + std::to_string(line_no) +
                                          ": expected header 'study_id,n1,y1,n2,y2'");
            }
            saw_header = true;
            continue;
        }
        if (fields.size() != 5)
            throw ValidationError(path + ":" + std::to_string(line_no) + ": expected 5 fields, got " +
                                  std::to_string(fields.size()));
        StudyRecord s;
        s.id = fields[0];
        if (s.id.empty())
            throw ValidationError(path + ":" + std::to_string(line_no) + ": empty study_id");
        s.n1 = parse_count(fields[1], "n1", line_no, path);
        s.y1 = parse_count(fields[2], "y1", line_no, path);
        s.n2 = parse_count(fields[3], "n2", line_no, path);
        s.y2 = parse_count(fields[4], "y2", line_no, path);
        if (!seen_ids.insert(s.id).second && warnings)
            warnings->push_back(path + ":" + std::to_string(line_no) + ": duplicate study_id '" +
                                s.id + "'");
        raw.push_back(std::move(s));
    }
    if (!saw_header) throw ValidationError(path + ": empty file (no header)");
    try {
        return validate_dataset(raw);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_csv(const MetaDataset& data, std::ostream& out) {
    out << "study_id,n1,y1,n2,y2\n";
    for (const auto& s : data.studies)
        out << s.id << ',' << s.n1 << ',' << s.y1 << ',' << s.n2 << ',' << s.y2 << '\n';
    for (const auto& s : data.dz_studies)
        out << s.id << ',' << s.n1 << ',' << s.y1 << ',' << s.n2 << ',' << s.y2 << '\n';
}

void write_csv(const MetaDataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open output file: " + path);
    write_csv(data, out);
}

namespace {

std::vector<std::pair<int, int>> load_size_pool(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open size pool file: " + path);
    std::vector<std::pair<int, int>> pool;
    std::string line;
    long line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fields = split_fields(t);
        if (!saw_header && !fields.empty() && fields[0] == "n1") {
            saw_header = true;
            continue;
        }
        saw_header = true;
        if (fields.size() < 2)
            throw ValidationError(path + ":" + std::to_string(line_no) +
                                  ": expected two columns n1,n2");
        int n1 = parse_count(fields[0], "n1", line_no, path);
        int n2 = parse_count(fields[1], "n2", line_no, path);
        if (n1 <= 0 || n2 <= 0)
            throw ValidationError(path + ":" + std::to_string(line_no) + ": sizes must be positive");
        pool.emplace_back(n1, n2);
    }
    if (pool.empty()) throw ValidationError(path + ": size pool is empty");
    return pool;
}

}  // namespace

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file: " + path);
    Scenario sc;
    bool saw_alpha0 = false, saw_beta0 = false;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ValidationError(path + ":" + std::to_string(line_no) +
                                  ": expected 'key = value'");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        auto where = path + ":" + std::to_string(line_no);
        try {
            if (key == "alpha0") {
                sc.alpha0 = std::stod(val);
                saw_alpha0 = true;
            } else if (key == "beta0") {
                sc.beta0 = std::stod(val);
                saw_beta0 = true;
            } else if (key == "r0") {
                sc.r0 = std::stod(val);
            } else if (key == "k") {
                sc.k_tot = std::stoi(val);
            } else if (key == "reps") {
                sc.reps = std::stoi(val);
            } else if (key == "seed") {
                sc.seed = std::stoull(val);
            } else if (key == "size_pool_file") {
                sc.size_pool = load_size_pool(val);
            } else {
                throw ValidationError(where + ": unknown key '" + key + "'");
            }
        } catch (const ValidationError&) {
            throw;
        } catch (const std::exception&) {
            throw ValidationError(where + ": bad value for '" + key + "': '" + val + "'");
        }
    }
    if (!saw_alpha0 || !saw_beta0)
        throw ValidationError(path + ": scenario must set alpha0 and beta0");
    if (!(sc.alpha0 > 0.0 && sc.beta0 > 0.0))
        throw ValidationError(path + ": alpha0 and beta0 must be positive");
    if (!(sc.r0 > 0.0 && sc.r0 < 1.0))
        throw ValidationError(path + ": r0 must lie in (0,1)");
    if (sc.k_tot < 1) throw ValidationError(path + ": k must be >= 1");
    if (sc.reps < 0) throw ValidationError(path + ": reps must be >= 0");
    return sc;
}

}  // namespace xrrmeta
