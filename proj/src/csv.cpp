#include "callcast/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "callcast/errors.hpp"

namespace callcast {

std::string format_double(double v) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

Dataset parse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "date,cases,calls")
        throw DataError(path + ": expected header 'date,cases,calls', got '" + line + "'");

    struct Row {
        Date date;
        double cases;
        double calls;
        std::size_t line_no;
    };
    std::vector<Row> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string date_s, cases_s, calls_s;
        if (!std::getline(ss, date_s, ',') || !std::getline(ss, cases_s, ',') ||
            !std::getline(ss, calls_s))
            throw DataError(path + ": row " + std::to_string(line_no) + ": expected 3 fields");
        Row r;
        r.date = parse_date(date_s);
        r.line_no = line_no;
        char* end = nullptr;
        r.cases = std::strtod(cases_s.c_str(), &end);
        if (end == cases_s.c_str() || *end != '\0')
            throw DataError(path + ": row " + std::to_string(line_no) + ": bad cases value '" + cases_s + "'");
        r.calls = std::strtod(calls_s.c_str(), &end);
        if (end == calls_s.c_str() || *end != '\0')
            throw DataError(path + ": row " + std::to_string(line_no) + ": bad calls value '" + calls_s + "'");
        if (r.cases < 0.0 || r.calls < 0.0)
            throw DataError(path + ": row " + std::to_string(line_no) + ": negative value");
        rows.push_back(r);
    }
    if (rows.empty()) throw DataError(path + ": no data rows");

    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto gap = rows[i].date - rows[i - 1].date;
        if (gap.count() == 0)
            throw DataError(path + ": duplicate date " + format_date(rows[i].date));
        if (gap.count() > 1)
            throw DataError(path + ": gap in dates, missing " +
                            format_date(rows[i - 1].date + std::chrono::days(1)));
    }

    std::vector<double> cases_v, calls_v;
    cases_v.reserve(rows.size());
    calls_v.reserve(rows.size());
    for (const Row& r : rows) {
        cases_v.push_back(r.cases);
        calls_v.push_back(r.calls);
    }
    return Dataset{DailySeries(rows.front().date, std::move(cases_v), "cases"),
                   DailySeries(rows.front().date, std::move(calls_v), "calls"), path, rows.size()};
}

void write_dataset_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "date,cases,calls\n";
    for (std::size_t i = 0; i < ds.cases.size(); ++i)
        out << format_date(ds.cases.date_at(i)) << ',' << format_double(ds.cases[i]) << ','
            << format_double(ds.calls[i]) << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace callcast
