"""Module for multi-view stacking of penalized learners over hierarchies of views."""
import logging

from mvstack.data import CvConfig, Dataset, LevelPlan, validate_views, ViewHierarchy
from mvstack.missing import NaAction
from mvstack.mrm import mrm, MrmQuery
from mvstack.stacking import mvs_coef, mvs_fit, mvs_importance, mvs_predict, MvsModel

logging.getLogger(__name__).addHandler(logging.NullHandler())
