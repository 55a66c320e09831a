#include "alache/runtime.hpp"

#include <future>
#include <utility>
#include <vector>

namespace alache {

TaskTracker::TaskId TaskTracker::begin(std::function<void()> interrupter, std::size_t threads) {
  std::lock_guard lock(mutex_);
  const TaskId id = next_id_++;
  interrupters_.emplace(id, std::move(interrupter));
  threads_ += threads;
  return id;
}

void TaskTracker::forget(TaskId id) {
  std::function<void()> dropped;
  std::lock_guard lock(mutex_);
  auto it = interrupters_.find(id);
  if (it == interrupters_.end()) return;
  dropped = std::move(it->second);
  interrupters_.erase(it);
}

void TaskTracker::thread_exited() {
  std::lock_guard lock(mutex_);
  if (--threads_ == 0) idle_cv_.notify_all();
}

std::size_t TaskTracker::active_threads() const {
  std::lock_guard lock(mutex_);
  return threads_;
}

void TaskTracker::wait_idle() const {
  std::unique_lock lock(mutex_);
  idle_cv_.wait(lock, [this] { return threads_ == 0; });
}

void TaskTracker::interrupt_all_and_wait() {
  std::vector<std::function<void()>> pending;
  {
    std::lock_guard lock(mutex_);
    for (auto& [id, interrupter] : interrupters_) pending.push_back(std::move(interrupter));
    interrupters_.clear();
  }
  for (auto& interrupter : pending) interrupter();
  wait_idle();
}

Dispatcher::~Dispatcher() { stop(); }

void Dispatcher::start() {
  std::lock_guard lock(mutex_);
  if (running_) return;
  stopping_ = false;
  running_ = true;
  worker_ = std::thread([this] { run(); });
}

void Dispatcher::stop() {
  std::thread worker;
  {
    std::lock_guard lock(mutex_);
    if (!running_) return;
    stopping_ = true;
    running_ = false;
    worker = std::move(worker_);
  }
  work_cv_.notify_all();
  if (worker.joinable()) worker.join();
}

bool Dispatcher::running() const {
  std::lock_guard lock(mutex_);
  return running_;
}

void Dispatcher::call(std::function<void()> job) {
  std::packaged_task<void()> task(std::move(job));
  auto done = task.get_future();
  {
    std::lock_guard lock(mutex_);
    if (!running_) throw RuntimeNotInitialized();
    queue_.emplace_back([&task] { task(); });
  }
  work_cv_.notify_one();
  done.get();
}

void Dispatcher::run() {
  std::unique_lock lock(mutex_);
  for (;;) {
    work_cv_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
    // Drain queued jobs before honouring a stop so no caller is left waiting.
    if (queue_.empty()) return;
    auto job = std::move(queue_.front());
    queue_.pop_front();
    lock.unlock();
    job();
    lock.lock();
  }
}

Runtime& Runtime::instance() {
  // Leaked on purpose: detached future threads may still touch the runtime
  // while static destructors run.
  static Runtime* runtime = new Runtime();
  return *runtime;
}

void Runtime::init() {
  if (initialized()) return;
  dispatcher_.start();
  initialized_.store(true, std::memory_order_release);
}

void Runtime::shutdown() {
  if (!initialized()) return;
  initialized_.store(false, std::memory_order_release);
  tasks_.interrupt_all_and_wait();
  dispatcher_.stop();
  registry_.clear();
}

void Runtime::require_initialized() const {
  if (!initialized()) throw RuntimeNotInitialized();
}

}  // namespace alache
