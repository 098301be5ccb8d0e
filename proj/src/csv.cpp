#include "chsh/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "chsh/errors.hpp"
#include "chsh/version.hpp"

namespace chsh {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_header(const ScanMetadata& meta) {
  std::ostringstream os;
  os << "# " << kToolName << " v" << (meta.version.empty() ? kVersion : meta.version.c_str())
     << " family=" << to_string(meta.grid.family) << " setup=" << to_string(meta.grid.setup)
     << " phi=" << format_number(meta.grid.phi) << " angles=" << meta.grid.angles_label
     << " cutoff=" << (meta.cutoff ? std::to_string(*meta.cutoff) : std::string("none"));
  return os.str();
}

void write_csv(std::ostream& os, const ScanResult& result) {
  os << csv_header(result.metadata) << '\n';
  os << "alpha,beta,value_signed,value_abs,violation\n";
  for (const ScanRow& r : result.rows) {
    os << format_number(r.alpha) << ',' << format_number(r.beta) << ',';
    if (r.skipped) {
      os << ",,skipped\n";
      continue;
    }
    os << format_number(r.value_signed) << ',' << format_number(r.value_abs) << ','
       << (r.violation ? 1 : 0) << '\n';
  }
}

std::string to_csv(const ScanResult& result) {
  std::ostringstream os;
  write_csv(os, result);
  return os.str();
}

void write_csv_file(const std::filesystem::path& path, const ScanResult& result) {
  namespace fs = std::filesystem;
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) {
      throw IoError("cannot open " + tmp.string() + " for writing");
    }
    write_csv(f, result);
    f.flush();
    if (!f) {
      std::error_code ignore;
      fs::remove(tmp, ignore);
      throw IoError("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw IoError("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace chsh
