"""
Crowell - Alexander modules and quandle colorings of link diagrams

Builds multivariate Alexander module presentations from combinatorial link
diagrams, simplifies them, projects to sublinks, and separates links that share
their Crowell map by counting colorings into small finite modules.
"""

__version__ = "0.1.0"
__author__ = "Crowell Contributors"
