"""Learners used for the sub-problems of a stacked model."""
