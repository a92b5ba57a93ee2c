#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace irfeed {

struct PassCatalog {
  std::vector<std::string> names;
  std::vector<std::string> reference_pipeline;
  size_t max_pipeline_len = 16;

  bool contains(const std::string& name) const;
};

struct Validity {
  bool valid = false;
  std::vector<std::string> unknown_names;  // input order, deduplicated
};

Validity validate_pass_list(const std::vector<std::string>& passes,
                            const PassCatalog& catalog);

struct CompileResult {
  bool ok = false;
  std::string compiled_ir;    // present iff ok
  int inst_count = 0;         // present iff ok
  std::string error_message;  // present iff !ok
};

struct CheckResult {
  bool ok = false;
  std::string message;  // first diagnostic line when !ok
};

// Uniform compiler surface used by feedback construction. Implementations
// must be safe for concurrent compile calls.
class CompilerBackend {
 public:
  virtual ~CompilerBackend() = default;
  virtual const PassCatalog& catalog() const = 0;
  virtual CompileResult compile(const std::string& ir_text,
                                const std::vector<std::string>& passes) const = 0;
  virtual CheckResult check_compilable(const std::string& ir_text) const = 0;
};

// In-process mini-IR compiler.
class MiniBackend : public CompilerBackend {
 public:
  MiniBackend();
  const PassCatalog& catalog() const override { return catalog_; }
  CompileResult compile(const std::string& ir_text,
                        const std::vector<std::string>& passes) const override;
  CheckResult check_compilable(const std::string& ir_text) const override;

 private:
  PassCatalog catalog_;
};

// Wraps an external optimizer binary. The argument template may contain
// {input} (temp file with the IR) and {passes} (comma-joined pass list);
// the tool's stdout is taken as the compiled IR and counted textually.
// Each call runs in its own subprocess with its own temp files.
class ExternalBackend : public CompilerBackend {
 public:
  // catalog_file: first line = space-separated reference pipeline, then
  // one pass name per line.
  ExternalBackend(std::string binary_path, std::string arg_template,
                  const std::string& catalog_file, int timeout_seconds = 30);

  const PassCatalog& catalog() const override { return catalog_; }
  CompileResult compile(const std::string& ir_text,
                        const std::vector<std::string>& passes) const override;
  CheckResult check_compilable(const std::string& ir_text) const override;

 private:
  std::string binary_path_;
  std::string arg_template_;
  PassCatalog catalog_;
  int timeout_seconds_;
};

PassCatalog load_pass_catalog_file(const std::string& path);

}  // namespace irfeed
