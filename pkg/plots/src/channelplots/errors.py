"""Errors raised while reading or selecting sweep data."""


class ChannelPlotsError(Exception):
    """Base class for this package's errors."""


class MissingColumn(ChannelPlotsError):
    """The CSV lacks a column the figure needs."""


class EmptySelection(ChannelPlotsError):
    """The filters (or the figure's preconditions) match no usable data."""
