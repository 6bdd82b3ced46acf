#include "honeytext/generator.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "honeytext/errors.hpp"

namespace honeytext {

bool NgramModel::vocabulary_contains(const std::string& token) const {
  for (const auto& [context, successors] : transitions) {
    if (std::find(context.begin(), context.end(), token) != context.end()) {
      return true;
    }
    if (successors.count(token)) return true;
  }
  for (const auto& start : sentence_starts) {
    if (std::find(start.begin(), start.end(), token) != start.end()) {
      return true;
    }
  }
  return false;
}

NgramModel train_ngram(const CategorizedCorpus& corpus,
                       const std::string& category, int order) {
  if (order < 2 || order > 4) {
    throw InputError("ngram order must be in [2, 4]");
  }
  auto docs = corpus.documents_in(category);
  if (docs.empty()) {
    throw LookupError("no documents for category: " + category);
  }
  NgramModel model;
  model.order = order;
  model.category = category;
  const std::size_t context_len = static_cast<std::size_t>(order - 1);
  for (const Document* doc : docs) {
    const auto& tokens = doc->tokens;
    if (tokens.empty()) continue;
    std::vector<std::string> start(
        tokens.begin(),
        tokens.begin() +
            static_cast<long>(std::min(context_len, tokens.size())));
    model.sentence_starts.push_back(std::move(start));
    for (std::size_t i = 0; i + context_len < tokens.size(); ++i) {
      std::vector<std::string> context(
          tokens.begin() + static_cast<long>(i),
          tokens.begin() + static_cast<long>(i + context_len));
      ++model.transitions[context][tokens[i + context_len]];
    }
  }
  if (model.sentence_starts.empty()) {
    throw TrainingError("category '" + category + "' has no usable text");
  }
  return model;
}

namespace {

// Weighted pick over successor counts, keyword candidates boosted.
const std::string* sample_successor(const std::map<std::string, long>& counts,
                                    const std::set<std::string>& keywords,
                                    double boost, Rng& rng) {
  double total = 0.0;
  for (const auto& [token, count] : counts) {
    total += static_cast<double>(count) * (keywords.count(token) ? boost : 1.0);
  }
  double u = rng.uniform_real() * total;
  double cumulative = 0.0;
  const std::string* last = nullptr;
  for (const auto& [token, count] : counts) {
    cumulative +=
        static_cast<double>(count) * (keywords.count(token) ? boost : 1.0);
    last = &token;
    if (u < cumulative) return &token;
  }
  return last;
}

}  // namespace

std::string generate_decoy(const NgramModel& model,
                           const std::vector<std::string>& keywords,
                           std::size_t max_tokens, double keyword_boost,
                           Rng& rng) {
  if (max_tokens == 0) throw InputError("max_tokens must be at least 1");
  if (keyword_boost < 1.0) throw InputError("keyword_boost must be >= 1");
  const std::set<std::string> keyword_set(keywords.begin(), keywords.end());
  const std::size_t context_len = static_cast<std::size_t>(model.order - 1);

  // Seed the walk with a keyword when the model knows one: prefer a
  // transition context containing a keyword, fall back to a bare keyword
  // that only occurs as a successor, then to a document start.
  std::vector<std::string> output;
  {
    std::vector<const std::vector<std::string>*> keyword_contexts;
    for (const auto& [context, successors] : model.transitions) {
      (void)successors;
      for (const auto& token : context) {
        if (keyword_set.count(token)) {
          keyword_contexts.push_back(&context);
          break;
        }
      }
    }
    if (!keyword_contexts.empty()) {
      output = *keyword_contexts[static_cast<std::size_t>(
          rng.uniform_index(keyword_contexts.size()))];
    } else {
      std::vector<std::string> known_keywords;
      for (const auto& keyword : keywords) {
        if (model.vocabulary_contains(keyword)) {
          known_keywords.push_back(keyword);
        }
      }
      if (!known_keywords.empty()) {
        output.push_back(known_keywords[static_cast<std::size_t>(
            rng.uniform_index(known_keywords.size()))]);
      } else if (!model.sentence_starts.empty()) {
        output = model.sentence_starts[static_cast<std::size_t>(
            rng.uniform_index(model.sentence_starts.size()))];
      }
    }
  }
  if (output.size() > max_tokens) output.resize(max_tokens);

  while (output.size() < max_tokens && output.size() >= context_len) {
    std::vector<std::string> context(output.end() - static_cast<long>(context_len),
                                     output.end());
    auto it = model.transitions.find(context);
    if (it == model.transitions.end()) break;
    output.push_back(
        *sample_successor(it->second, keyword_set, keyword_boost, rng));
  }

  std::string text;
  for (std::size_t i = 0; i < output.size(); ++i) {
    if (i) text += ' ';
    text += output[i];
  }
  return text;
}

namespace {

struct Pipe {
  int fds[2] = {-1, -1};
  Pipe() {
    if (pipe(fds) != 0) throw ResourceError("pipe creation failed");
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  void close_read() {
    if (fds[0] >= 0) {
      ::close(fds[0]);
      fds[0] = -1;
    }
  }
  void close_write() {
    if (fds[1] >= 0) {
      ::close(fds[1]);
      fds[1] = -1;
    }
  }
};

}  // namespace

std::string generate_via_external(const GeneratorSpec& spec,
                                  const std::vector<std::string>& keywords,
                                  const std::string& category) {
  if (spec.kind != GeneratorSpec::Kind::external) {
    throw InputError("generator spec is not configured for an external command");
  }
  if (spec.external_command.empty()) {
    throw InputError("external generator command is empty");
  }

  nlohmann::json request;
  request["keywords"] = keywords;
  request["category"] = category;
  request["max_tokens"] = spec.max_tokens;
  std::string payload = request.dump() + "\n";

  Pipe to_child, from_child, errors_pipe;
  pid_t pid = fork();
  if (pid < 0) throw ResourceError("fork failed");
  if (pid == 0) {
    dup2(to_child.fds[0], STDIN_FILENO);
    dup2(from_child.fds[1], STDOUT_FILENO);
    dup2(errors_pipe.fds[1], STDERR_FILENO);
    to_child.close_read();
    to_child.close_write();
    from_child.close_read();
    from_child.close_write();
    errors_pipe.close_read();
    errors_pipe.close_write();
    execl("/bin/sh", "sh", "-c", spec.external_command.c_str(),
          static_cast<char*>(nullptr));
    _exit(127);
  }

  to_child.close_read();
  from_child.close_write();
  errors_pipe.close_write();

  // The request is one small line, far below the pipe buffer, so a single
  // write before draining the child cannot deadlock. A child that exits
  // without reading would raise SIGPIPE, so the signal is blocked and any
  // pending instance consumed before restoring the caller's mask.
  sigset_t pipe_set, old_set;
  sigemptyset(&pipe_set);
  sigaddset(&pipe_set, SIGPIPE);
  pthread_sigmask(SIG_BLOCK, &pipe_set, &old_set);
  std::size_t written = 0;
  while (written < payload.size()) {
    ssize_t n = write(to_child.fds[1], payload.data() + written,
                      payload.size() - written);
    if (n <= 0) break;  // child may exit without reading; not fatal here
    written += static_cast<std::size_t>(n);
  }
  to_child.close_write();
  timespec no_wait{0, 0};
  while (sigtimedwait(&pipe_set, nullptr, &no_wait) == SIGPIPE) {
  }
  pthread_sigmask(SIG_SETMASK, &old_set, nullptr);

  std::string out_text, err_text;
  char buffer[4096];
  while (from_child.fds[0] >= 0 || errors_pipe.fds[0] >= 0) {
    pollfd fds[2];
    nfds_t count = 0;
    if (from_child.fds[0] >= 0) {
      fds[count++] = {from_child.fds[0], POLLIN, 0};
    }
    if (errors_pipe.fds[0] >= 0) {
      fds[count++] = {errors_pipe.fds[0], POLLIN, 0};
    }
    if (poll(fds, count, -1) < 0) break;
    for (nfds_t k = 0; k < count; ++k) {
      if (!(fds[k].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      ssize_t n = read(fds[k].fd, buffer, sizeof(buffer));
      bool is_stdout = fds[k].fd == from_child.fds[0];
      if (n > 0) {
        (is_stdout ? out_text : err_text).append(buffer,
                                                 static_cast<std::size_t>(n));
      } else {
        if (is_stdout) from_child.close_read();
        else errors_pipe.close_read();
      }
    }
  }

  int status = 0;
  waitpid(pid, &status, 0);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    std::string detail = err_text.empty() ? out_text : err_text;
    throw GeneratorError("external generator failed (status " +
                         std::to_string(WIFEXITED(status)
                                            ? WEXITSTATUS(status)
                                            : -1) +
                         "): " + detail);
  }

  while (!out_text.empty() &&
         (out_text.back() == '\n' || out_text.back() == '\r' ||
          out_text.back() == ' ' || out_text.back() == '\t')) {
    out_text.pop_back();
  }
  if (out_text.empty()) {
    throw GeneratorError("external generator produced no output");
  }

  std::istringstream stream(out_text);
  std::vector<std::string> tokens;
  std::string token;
  while (stream >> token) tokens.push_back(token);
  if (tokens.size() <= spec.max_tokens) return out_text;
  std::string trimmed;
  for (std::size_t i = 0; i < spec.max_tokens; ++i) {
    if (i) trimmed += ' ';
    trimmed += tokens[i];
  }
  return trimmed;
}

}  // namespace honeytext
