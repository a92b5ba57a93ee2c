#include "irfeed/backend.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "irfeed/ir_text.hpp"
#include "irfeed/mini_ir.hpp"
#include "irfeed/passes.hpp"

namespace irfeed {

bool PassCatalog::contains(const std::string& name) const {
  return std::find(names.begin(), names.end(), name) != names.end();
}

Validity validate_pass_list(const std::vector<std::string>& passes,
                            const PassCatalog& catalog) {
  Validity v;
  std::unordered_set<std::string> reported;
  for (const auto& p : passes) {
    if (!catalog.contains(p) && reported.insert(p).second)
      v.unknown_names.push_back(p);
  }
  v.valid = v.unknown_names.empty() && passes.size() <= catalog.max_pipeline_len;
  return v;
}

MiniBackend::MiniBackend() {
  catalog_.names = mir::pass_catalog_names();
  catalog_.reference_pipeline = mir::reference_oz_pipeline();
}

CompileResult MiniBackend::compile(const std::string& ir_text,
                                   const std::vector<std::string>& passes) const {
  CompileResult result;
  auto validity = validate_pass_list(passes, catalog_);
  if (!validity.valid) {
    result.error_message = "invalid pass list";
    for (const auto& u : validity.unknown_names)
      result.error_message += " " + u;
    return result;
  }
  auto parsed = mir::parse_module(ir_text);
  if (!parsed.ok()) {
    result.error_message = parsed.error.to_string();
    return result;
  }
  auto piped = mir::apply_pipeline(*parsed.module, passes);
  if (!piped.ok()) {
    result.error_message = piped.error.message;
    return result;
  }
  result.ok = true;
  result.compiled_ir = mir::render(*piped.module);
  result.inst_count = piped.module->instruction_count();
  return result;
}

CheckResult MiniBackend::check_compilable(const std::string& ir_text) const {
  auto parsed = mir::parse_module(ir_text);
  if (parsed.ok()) return {true, ""};
  return {false, parsed.error.to_string()};
}

PassCatalog load_pass_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pass catalog file: " + path);
  PassCatalog cat;
  std::string line;
  if (std::getline(in, line)) {
    std::istringstream ref(line);
    std::string name;
    while (ref >> name) cat.reference_pipeline.push_back(name);
  }
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string name;
    if (row >> name) cat.names.push_back(name);
  }
  if (cat.names.empty())
    throw std::runtime_error("pass catalog file has no pass names: " + path);
  for (const auto& p : cat.reference_pipeline) {
    if (!cat.contains(p))
      throw std::runtime_error("reference pipeline pass not in catalog: " + p);
  }
  return cat;
}

namespace {

class TempFile {
 public:
  explicit TempFile(const std::string& suffix) {
    std::string tmpl = "/tmp/irfeed_" + suffix + "_XXXXXX";
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    int fd = ::mkstemp(buf.data());
    if (fd < 0) throw std::runtime_error("mkstemp failed");
    ::close(fd);
    path_ = buf.data();
  }
  ~TempFile() { std::remove(path_.c_str()); }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string first_line(const std::string& text) {
  size_t nl = text.find('\n');
  return nl == std::string::npos ? text : text.substr(0, nl);
}

std::string substitute(std::string tmpl, const std::string& key,
                       const std::string& value) {
  size_t pos;
  while ((pos = tmpl.find(key)) != std::string::npos)
    tmpl.replace(pos, key.size(), value);
  return tmpl;
}

}  // namespace

ExternalBackend::ExternalBackend(std::string binary_path,
                                 std::string arg_template,
                                 const std::string& catalog_file,
                                 int timeout_seconds)
    : binary_path_(std::move(binary_path)),
      arg_template_(std::move(arg_template)),
      catalog_(load_pass_catalog_file(catalog_file)),
      timeout_seconds_(timeout_seconds) {}

CompileResult ExternalBackend::compile(
    const std::string& ir_text, const std::vector<std::string>& passes) const {
  CompileResult result;
  auto validity = validate_pass_list(passes, catalog_);
  if (!validity.valid) {
    result.error_message = "invalid pass list";
    for (const auto& u : validity.unknown_names)
      result.error_message += " " + u;
    return result;
  }

  TempFile input("in"), out("out"), err("err");
  {
    std::ofstream f(input.path());
    f << ir_text;
  }
  std::string joined;
  for (size_t i = 0; i < passes.size(); ++i) {
    if (i) joined += ",";
    joined += passes[i];
  }
  std::string args = substitute(arg_template_, "{input}", input.path());
  args = substitute(args, "{passes}", joined);

  const std::string cmd = "timeout " + std::to_string(timeout_seconds_) + " " +
                          binary_path_ + " " + args + " </dev/null >" +
                          out.path() + " 2>" + err.path();
  int status = std::system(cmd.c_str());
  int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (exit_code == 124) {
    result.error_message = "timeout";
    return result;
  }
  if (exit_code != 0) {
    std::string diag = first_line(read_file(err.path()));
    result.error_message = diag.empty()
                               ? "optimizer exited with code " +
                                     std::to_string(exit_code)
                               : diag;
    return result;
  }
  result.ok = true;
  result.compiled_ir = read_file(out.path());
  result.inst_count = count_instructions_text(result.compiled_ir);
  return result;
}

CheckResult ExternalBackend::check_compilable(const std::string& ir_text) const {
  if (ir_text.empty()) return {false, "empty module"};
  auto r = compile(ir_text, {});
  return {r.ok, r.error_message};
}

}  // namespace irfeed
