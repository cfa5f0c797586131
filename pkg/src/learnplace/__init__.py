"""Learner placement service.

Registers students with personal and cultural profiles, administers a
four-section aptitude test, derives a cultural reference value, assigns a
proficiency level through a first-match decision table, routes placed
students to level-specific LMS tracks, and keeps case-base, feedback and
analytics pipelines on top of file-backed repositories.
"""

from .core import PlacementSystem

__all__ = ["PlacementSystem"]
__version__ = "0.1.0"
