#include "cornerext/table.hpp"

#include <algorithm>
#include <cstdio>

namespace cornerext {

void ErrorTable::add(std::string case_id, std::string check, std::string location, double value,
                     double bound) {
  ErrorRow r;
  r.case_id = std::move(case_id);
  r.check = std::move(check);
  r.location = std::move(location);
  r.value = value;
  r.bound = bound;
  r.pass = (value <= bound);
  rows.push_back(std::move(r));
}

bool ErrorTable::all_pass() const {
  for (const ErrorRow& r : rows)
    if (!r.pass) return false;
  return true;
}

void ErrorTable::sort_rows() {
  std::sort(rows.begin(), rows.end(), [](const ErrorRow& a, const ErrorRow& b) {
    if (a.case_id != b.case_id) return a.case_id < b.case_id;
    if (a.check != b.check) return a.check < b.check;
    return a.location < b.location;
  });
}

std::string ErrorTable::to_csv() {
  sort_rows();
  std::string out = "case,check,location,value,bound,status\n";
  char buf[64];
  for (const ErrorRow& r : rows) {
    out += r.case_id + "," + r.check + "," + r.location + ",";
    std::snprintf(buf, sizeof(buf), "%.17g", r.value);
    out += buf;
    out += ",";
    std::snprintf(buf, sizeof(buf), "%.17g", r.bound);
    out += buf;
    out += ",";
    out += r.pass ? "PASS" : "FAIL";
    out += "\n";
  }
  return out;
}

}  // namespace cornerext
