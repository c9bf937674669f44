// SPDX-License-Identifier: Apache-2.0
//
// rissim - two-path RIS-assisted propagation simulator
// Copyright (C) 2026 The rissim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RISSIM_SUMMATION_HPP
#define RISSIM_SUMMATION_HPP

#include <complex>
#include <concepts>

namespace rissim
{
    // Error-free transformation: s + err == a + b exactly (Knuth TwoSum, no ordering precondition)
    template <std::floating_point T>
    constexpr void two_sum(T a, T b, T &s, T &err)
    {
        s = a + b;
        const T bp = s - a;
        err = (a - (s - bp)) + (b - bp);
    }

    // Cascaded compensated sum: rounding errors of every addition are accumulated separately
    // and folded back in on read. Result is as accurate as if summed in twice the working precision.
    // Must not be compiled with -ffast-math.
    template <std::floating_point T>
    class CompensatedSum
    {
    public:
        constexpr void add(T value)
        {
            T err;
            two_sum(sum_, value, sum_, err);
            compensation_ += err;
        }
        constexpr CompensatedSum &operator+=(T value)
        {
            add(value);
            return *this;
        }
        constexpr T value() const { return sum_ + compensation_; }

    private:
        T sum_ = T(0);
        T compensation_ = T(0);
    };

    template <std::floating_point T>
    class CompensatedComplexSum
    {
    public:
        constexpr void add(std::complex<T> value)
        {
            re_.add(value.real());
            im_.add(value.imag());
        }
        constexpr CompensatedComplexSum &operator+=(std::complex<T> value)
        {
            add(value);
            return *this;
        }
        constexpr std::complex<T> value() const { return {re_.value(), im_.value()}; }

    private:
        CompensatedSum<T> re_;
        CompensatedSum<T> im_;
    };
}

#endif
