/* Copyright (c) 2026, vizobj contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 the "License";
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "log.hpp"

#include <iostream>
#include <mutex>

namespace vizobj {

namespace {

std::mutex g_mutex;
LogSink g_sink = [](LogLevel level, const std::string& message) {
    if (level == LogLevel::Warning) std::cerr << "vizobj: warning: " << message << "\n";
};

void emit(LogLevel level, const std::string& message) {
    std::lock_guard lock(g_mutex);
    if (g_sink) g_sink(level, message);
}

}  // namespace

void set_log_sink(LogSink sink) {
    std::lock_guard lock(g_mutex);
    g_sink = std::move(sink);
}

void log_info(const std::string& message) { emit(LogLevel::Info, message); }
void log_warning(const std::string& message) { emit(LogLevel::Warning, message); }

}  // namespace vizobj
