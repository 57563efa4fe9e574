"""Graded Lie algebra workbench over finite fields."""
