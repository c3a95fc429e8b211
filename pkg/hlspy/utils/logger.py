#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tabular progress logs of the long-running computations.
"""
import logging


class Logger(object):
    """Log base class.
    Parameters
    ----------
        logFile: bool
            The switch of logging to files

        logToConsole: bool
            The switch of logging to console (stderr)

        directory: str
            The prefix of the log file path

    Attributes
    ----------
        logger:
            The logger

        time:
            The time spent on the logged jobs

        n_slots:
            The number of horizontal slots the logger needs
    """
    n_slots = 64

    def __init__(self, logFile=0, logToConsole=0, directory=''):
        name = "hlspy." + self.__repr__()
        logger = logging.getLogger(name)
        logger.setLevel(logging.INFO)
        logger.propagate = False
        if logger.hasHandlers():
            logger.handlers.clear()
        if logFile != 0:
            handler = logging.FileHandler(
                directory + self.__repr__() + ".log", mode="a")
            logger.addHandler(handler)
        if logToConsole != 0:
            streamHandler = logging.StreamHandler()
            logger.addHandler(streamHandler)
        self.logger = logger
        self.time = 0

    def __repr__(self):
        return ""

    def _rule(self):
        self.logger.info("-" * self.n_slots)

    def _title(self, title, columns):
        self._rule()
        self.logger.info("{:^{width}s}".format(title, width=self.n_slots))
        self._rule()
        width = self.n_slots // len(columns)
        self.logger.info("".join(
            "{:>{width}s}".format(c, width=width) for c in columns))
        self._rule()

    def header(self):
        pass

    def text(self):
        pass

    def footer(self, time=None):
        if time is not None:
            self.time = time
        self._rule()
        self.logger.info("Time: {} seconds".format(self.time))


class LoggerCheck(Logger):
    """Per-slice log of the harmonic-compatibility check."""

    def __init__(self, name, n_samples, **kwargs):
        self.name = name
        self.n_samples = n_samples
        super().__init__(**kwargs)

    def __repr__(self):
        return "Check"

    def header(self):
        self._title(
            "Level-set check of {} ({} samples)".format(
                self.name, self.n_samples),
            ["t", "mean lambda", "spread", "samples"],
        )

    def text(self, t, mean, spread, count):
        self.logger.info("{:>16f}{:>16.6e}{:>16.6e}{:>16d}".format(
            t, mean, spread, count))

    def footer(self, verdict, residual, tol, time=None):
        super().footer(time)
        self.logger.info("Verdict: {} (residual {:.6e}, tolerance {:.1e})"
            .format(verdict, residual, tol))


class LoggerFlow(Logger):
    """Per-step log of a normal flow."""

    def __repr__(self):
        return "Flow"

    def header(self, name, step):
        self._title(
            "Normal flow of {}, step {}".format(name, step),
            ["step", "s", "t", "density"],
        )

    def text(self, step, s, t, density):
        self.logger.info("{:>16d}{:>16f}{:>16f}{:>16f}".format(
            step, s, t, density))

    def footer(self, truncated, time=None):
        super().footer(time)
        if truncated:
            self.logger.info("Flow stops since it left the t interval")


class LoggerReconstruction(Logger):
    """Per-node log of the reconstruction of u."""

    def __repr__(self):
        return "Reconstruction"

    def header(self, name, u0, du0):
        self._title(
            "Reconstruction for {}, gauge ({}, {})".format(name, u0, du0),
            ["t", "lambda", "du", "u"],
        )

    def text(self, t, lam, du, u):
        self.logger.info("{:>16f}{:>16.6e}{:>16.6e}{:>16.6e}".format(
            t, lam, du, u))


class LoggerGradient(Logger):
    """Per-point log of the gradient-law verification."""

    def __repr__(self):
        return "Gradient"

    def header(self, name):
        self._title(
            "Gradient law along a normal flow of {}".format(name),
            ["s", "|grad U|", "prediction", "rel. error"],
        )

    def text(self, s, lhs, rhs, error):
        self.logger.info("{:>16f}{:>16.8e}{:>16.8e}{:>16.2e}".format(
            s, lhs, rhs, error))

    def footer(self, max_error, time=None):
        super().footer(time)
        self.logger.info("Max relative error: {:.3e}".format(max_error))
