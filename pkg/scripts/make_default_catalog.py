#!/usr/bin/env python3
"""Author the default condition catalog and write it to the package data dir.

Usage:
    python scripts/make_default_catalog.py

Rewrites src/echo_cohort/data/default_catalog.txt in place. The catalog is
data-as-code: edit the tables below, rerun, commit the regenerated file.
"""

from __future__ import annotations

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from echo_cohort.catalog import (  # noqa: E402
    ConditionCatalog,
    ConditionDef,
    SubcategoryDef,
    LvefTemplate,
    parse_catalog,
    dump_catalog,
)

OUT_PATH = os.path.join(
    os.path.dirname(__file__), "..", "src", "echo_cohort", "data", "default_catalog.txt"
)

# ============================================================================
# CATALOG DATA
# ============================================================================
# condition name -> (ood, {subcategory id: (label, [variants], lvef_band)})
# lvef_band is (lo, hi, point_fraction) or None.

CATALOG: dict[str, tuple[bool, dict[str, tuple[str, list[str], tuple | None]]]] = {
    "wall thickness": (False, {
        "wall-thickness-normal": ("normal wall thickness", [
            "Left ventricular wall thickness is normal",
            "Normal left ventricular wall thickness in all imaged segments",
            "The left ventricular walls are of normal thickness",
            "LV wall thickness is within normal limits for body size",
            "No increase in left ventricular wall thickness is identified",
            "Wall thickness of the left ventricle is normal in the parasternal long axis view",
            "The ventricular septum and posterior wall are of normal thickness",
            "Normal myocardial wall thickness is noted throughout the left ventricle",
        ], None),
        "wall-thickness-mildly-increased": ("mildly increased wall thickness", [
            "Mildly increased left ventricular wall thickness",
            "Left ventricular wall thickness is mildly increased on the current study",
            "There is mild thickening of the left ventricular walls",
            "Mild increase in LV wall thickness without interval change",
            "The septal and posterior walls are mildly thickened on this study",
            "Borderline thickening of the left ventricular myocardium is noted",
            "LV wall thickness is mildly increased compared with the prior examination",
            "Mild left ventricular wall thickening is present by visual assessment",
        ], None),
        "wall-thickness-severely-increased": ("severely increased wall thickness", [
            "Severely increased left ventricular wall thickness",
            "Left ventricular wall thickness is severely increased in all segments",
            "There is severe thickening of the left ventricular walls",
            "Marked increase in LV wall thickness is demonstrated in multiple views",
            "The myocardium of the left ventricle is severely thickened",
            "Severe thickening of the septal and posterior walls is present",
            "LV wall thickness is markedly increased throughout all imaged segments",
            "Severe left ventricular wall thickening is noted on the current study",
        ], None),
    }),
    "cavity size": (False, {
        "cavity-size-normal": ("normal cavity size", [
            "Left ventricular cavity size is normal",
            "Normal left ventricular cavity size throughout the cardiac cycle",
            "The left ventricular cavity is normal in size",
            "LV chamber dimensions are within normal limits for body size",
            "Normal left ventricular internal dimensions are recorded",
            "The left ventricle is normal in size in all imaged views",
            "Left ventricular chamber size is normal when indexed to body surface area",
            "No dilatation of the left ventricular cavity is identified on this study",
        ], None),
        "cavity-mildly-dilated": ("mildly dilated cavity", [
            "The left ventricular cavity is mildly dilated",
            "Mild dilatation of the left ventricle is present on two dimensional imaging",
            "Mildly dilated left ventricular cavity without interval change",
            "Mild enlargement of the left ventricular chamber",
            "The left ventricle is mildly enlarged on the current study",
            "LV cavity size is mildly increased compared with the prior examination",
            "Borderline enlargement of the left ventricular cavity is noted",
            "Mildly increased left ventricular internal dimensions are recorded",
        ], None),
        "cavity-moderately-dilated": ("moderately dilated cavity", [
            "The left ventricular cavity is moderately dilated",
            "Moderate dilatation of the left ventricle is present on two dimensional imaging",
            "Moderately dilated left ventricular cavity without interval change",
            "Moderate enlargement of the left ventricular chamber",
            "The left ventricle is moderately enlarged on the current study",
            "LV cavity size is moderately increased compared with the prior examination",
            "Moderate left ventricular chamber enlargement is present",
            "Moderately increased left ventricular internal dimensions are recorded",
        ], None),
        "cavity-severely-dilated": ("severely dilated cavity", [
            "The left ventricular cavity is severely dilated",
            "Severe dilatation of the left ventricle is present on two dimensional imaging",
            "Severely dilated left ventricular cavity without interval change",
            "Marked enlargement of the left ventricular chamber",
            "The left ventricle is severely enlarged on the current study",
            "LV cavity size is severely increased compared with the prior examination",
            "Massive dilatation of the left ventricular cavity is present",
            "Severely increased left ventricular internal dimensions are recorded",
        ], None),
        "cavity-small": ("small cavity", [
            "The left ventricular cavity is small",
            "Small left ventricular cavity size consistent with reduced preload",
            "The left ventricular chamber is small and underfilled",
            "Small LV cavity consistent with underfilling on the current study",
            "The left ventricle appears small in all imaged views",
            "Reduced left ventricular cavity dimensions are recorded",
            "The LV chamber size is diminished in keeping with reduced preload",
            "Small underfilled left ventricle is noted on the current examination",
        ], None),
    }),
    "systolic function": (False, {
        "systolic-function-normal": ("normal systolic function", [
            "Left ventricular systolic function is normal",
            "Normal left ventricular systolic function in all imaged views",
            "Overall LV systolic function is normal on the current study",
            "Global left ventricular systolic function is preserved",
            "Left ventricular systolic performance is preserved on this study",
            "LV systolic function is within normal limits by visual assessment",
            "Normal global and regional left ventricular systolic function is observed",
            "Left ventricular contractility is normal throughout the cardiac cycle",
        ], None),
        "systolic-function-hyperdynamic": ("hyperdynamic systolic function", [
            "Hyperdynamic left ventricular systolic function",
            "Left ventricular systolic function is hyperdynamic on the current study",
            "The left ventricle is hyperdynamic in all imaged views",
            "Hyperdynamic LV systolic function",
            "Vigorous left ventricular systolic function is observed",
            "Supranormal left ventricular systolic function on the current study",
            "LV contractility appears hyperdynamic by visual assessment",
            "Hyperdynamic systolic function of the left ventricle is noted",
        ], None),
        "systolic-function-mildly-depressed": ("mildly depressed systolic function", [
            "Left ventricular systolic function is mildly depressed",
            "Mildly depressed LV systolic function on the current study",
            "Mild reduction in left ventricular systolic function is observed",
            "Mildly reduced global systolic function of the left ventricle",
            "LV systolic performance is mildly impaired on the current study",
            "Mild global left ventricular systolic dysfunction is present",
            "Overall systolic function of the left ventricle is mildly reduced",
            "Mildly impaired left ventricular contractility by visual assessment",
        ], None),
        "systolic-function-severely-depressed": ("severely depressed systolic function", [
            "Left ventricular systolic function is severely depressed",
            "Severely depressed LV systolic function on the current study",
            "Severe reduction in left ventricular systolic function is observed",
            "Severely reduced global systolic function of the left ventricle",
            "LV systolic performance is severely impaired on the current study",
            "Severe global left ventricular systolic dysfunction is present",
            "Overall systolic function of the left ventricle is severely reduced",
            "Severely impaired left ventricular contractility by visual assessment",
        ], None),
    }),
    "diastolic function": (False, {
        "diastolic-function-normal": ("normal diastolic function", [
            "Left ventricular diastolic function is normal",
            "Normal left ventricular diastolic function for age",
            "Normal LV diastolic filling pattern on Doppler interrogation",
            "Diastolic parameters of the left ventricle are within normal limits",
            "No evidence of left ventricular diastolic dysfunction on this study",
            "The transmitral inflow pattern is normal for age",
            "LV diastolic relaxation is normal on Doppler interrogation",
            "Normal diastolic performance of the left ventricle is observed",
        ], None),
        "impaired-relaxation": ("impaired relaxation", [
            "Impaired left ventricular relaxation is present",
            "The transmitral inflow pattern suggests impaired relaxation",
            "Grade one diastolic dysfunction with impaired relaxation",
            "Abnormal LV relaxation pattern on Doppler interrogation",
            "Mild diastolic dysfunction with an impaired relaxation pattern is present",
            "Evidence of impaired left ventricular diastolic relaxation on this study",
            "Delayed relaxation of the left ventricle on transmitral Doppler",
            "Impaired relaxation filling pattern of the left ventricle is noted",
        ], None),
        "restrictive-filling": ("restrictive filling", [
            "Restrictive left ventricular filling pattern",
            "The transmitral inflow pattern is restrictive on Doppler interrogation",
            "Grade three diastolic dysfunction with restrictive physiology",
            "Severe diastolic dysfunction with restrictive filling is present",
            "Restrictive physiology of the left ventricle is demonstrated",
            "Doppler findings are consistent with restrictive LV filling",
            "Markedly elevated filling pressures with a restrictive inflow pattern",
            "Restrictive diastolic filling of the left ventricle is noted on this study",
        ], None),
    }),
    "hypokinesis": (False, {
        "hypokinesis-mild": ("mild hypokinesis", [
            "Mild hypokinesis of the left ventricle",
            "Mild left ventricular hypokinesis on the current study",
            "Mildly hypokinetic left ventricle in all imaged views",
            "Mild hypokinesis is observed across serial cycles",
            "The left ventricular walls are mildly hypokinetic on this study",
            "Mild reduction in left ventricular wall motion is present",
            "Mildly reduced LV wall motion by visual assessment",
            "Mild hypokinesis involving the imaged left ventricular segments is noted",
        ], None),
        "hypokinesis-mild-moderate": ("mild-moderate hypokinesis", [
            "Mild to moderate hypokinesis of the left ventricle",
            "Mild-moderate left ventricular hypokinesis on the current study",
            "Mild to moderate hypokinesis is observed across serial cycles",
            "The left ventricle is mildly to moderately hypokinetic",
            "Mild-moderate reduction in left ventricular wall motion is present",
            "Mild to moderate LV hypokinesis is present on the current study",
            "Mildly to moderately reduced LV wall motion by visual assessment",
            "Mild-moderate hypokinesis involving the left ventricle is noted",
        ], None),
        "hypokinesis-moderate": ("moderate hypokinesis", [
            "Moderate hypokinesis of the left ventricle",
            "Moderate left ventricular hypokinesis on the current study",
            "Moderately hypokinetic left ventricle in all imaged views",
            "Moderate hypokinesis is observed across serial cycles",
            "The left ventricular walls are moderately hypokinetic on this study",
            "Moderate reduction in left ventricular wall motion is present",
            "Moderately reduced LV wall motion by visual assessment",
            "Moderate hypokinesis involving multiple left ventricular segments is noted",
        ], None),
        "hypokinesis-severe": ("severe hypokinesis", [
            "Severe hypokinesis of the left ventricle",
            "Severe left ventricular hypokinesis on the current study",
            "Severely hypokinetic left ventricle in all imaged views",
            "Severe hypokinesis is observed across serial cycles",
            "The left ventricular walls are severely hypokinetic on this study",
            "Severe reduction in left ventricular wall motion is present",
            "Severely reduced LV wall motion by visual assessment",
            "Severe hypokinesis of all imaged left ventricular segments is noted",
        ], None),
        "hypokinesis-global": ("global hypokinesis", [
            "Global hypokinesis of the left ventricle",
            "Global left ventricular hypokinesis on the current study",
            "Diffuse hypokinesis of the left ventricle in all imaged views",
            "Diffusely hypokinetic left ventricle across serial cycles",
            "Global reduction in left ventricular wall motion is present",
            "Wall motion is globally reduced throughout the left ventricle",
            "Diffuse LV hypokinesis without regional predominance is observed",
            "Generalized hypokinesis of the left ventricular walls is noted on this study",
        ], None),
    }),
    "gradient": (False, {
        "apical-intracavitary-gradient": ("apical intracavitary gradient", [
            "There is an apical intracavitary gradient",
            "An apical intracavitary gradient is present at rest",
            "Apical intracavitary gradient noted on Doppler interrogation",
            "Doppler interrogation demonstrates an apical intracavitary gradient",
            "Evidence of an intracavitary gradient at the apical level",
            "An intracavitary pressure gradient is detected near the apex",
            "Apical intracavitary flow acceleration with a measurable resting gradient",
            "An apical intracavitary gradient is identified on the current study",
        ], None),
        "no-apical-intracavitary-gradient": ("no apical intracavitary gradient", [
            "There is no apical intracavitary gradient",
            "No apical intracavitary gradient is present at rest",
            "No apical intracavitary gradient detected on Doppler interrogation",
            "Doppler interrogation shows no apical intracavitary gradient",
            "No evidence of an intracavitary gradient at the apical level",
            "Absence of an apical intracavitary pressure gradient is confirmed",
            "No intracavitary gradient is identified at the apex on the current study",
            "No apical intracavitary flow acceleration or gradient is seen",
        ], None),
        "midcavitary-gradient": ("midcavitary gradient", [
            "Midcavitary gradient within the left ventricle",
            "A mid left ventricular cavity gradient is present at rest",
            "Midcavitary flow acceleration with a resting gradient is demonstrated",
            "Doppler demonstrates a gradient at the mid cavity level",
            "Resting midcavitary gradient is noted on continuous wave Doppler",
            "Midcavitary systolic gradient within the left ventricle is identified",
            "There is midcavitary obstruction with a measurable gradient",
            "A gradient is recorded at the mid ventricular level on Doppler",
        ], None),
        "lvot-gradient": ("left ventricular outflow tract gradient", [
            "Left ventricular outflow tract gradient is present",
            "There is a resting LVOT gradient on continuous wave Doppler",
            "Elevated left ventricular outflow tract velocities with a gradient",
            "Dynamic LVOT obstruction with a measurable gradient is demonstrated",
            "Doppler shows a gradient across the left ventricular outflow tract",
            "Left ventricular outflow obstruction with an elevated resting gradient",
            "A dynamic outflow tract gradient is present at rest",
            "LVOT gradient consistent with dynamic outflow obstruction is recorded",
        ], None),
    }),
    "mass or thrombus": (False, {
        "mural-thrombus": ("mural thrombus", [
            "Left ventricular mural thrombus is present",
            "Mural thrombus in the left ventricle",
            "A mural thrombus is present along the ventricular wall",
            "Laminated mural thrombus along the left ventricular wall",
            "Mural thrombus adherent to the apical wall is seen",
            "Findings consistent with a left ventricular mural thrombus",
            "A laminated thrombus is seen along the ventricular wall",
            "Mural thrombus is identified within the left ventricular cavity",
        ], None),
        "apical-thrombus": ("apical thrombus", [
            "Apical thrombus in the left ventricle",
            "Left ventricular apical thrombus on contrast imaging",
            "A thrombus is present at the left ventricular apex",
            "Pedunculated thrombus at the apex of the left ventricle",
            "An apical filling defect consistent with thrombus is seen",
            "Thrombus is identified at the LV apex on contrast imaging",
            "Apical clot is visualized within the left ventricle",
            "Echodensity at the apex consistent with thrombus is noted",
        ], None),
        "no-thrombus-seen": ("no thrombus seen", [
            "No left ventricular thrombus is seen",
            "No thrombus is identified in the left ventricle",
            "No evidence of intracavitary thrombus on the current study",
            "No LV thrombus is detected with contrast administration",
            "The left ventricular apex is free of thrombus",
            "No intraventricular thrombus is appreciated in any view",
            "No definite thrombus is visualized within the left ventricle",
            "Absence of left ventricular thrombus is confirmed on contrast imaging",
        ], None),
        "lv-mass": ("left ventricular mass lesion", [
            "A mass lesion is present in the left ventricle",
            "Left ventricular intracavitary mass is visualized",
            "An echogenic mass is seen within the left ventricular cavity",
            "Intracavitary mass lesion within the left ventricle",
            "A mobile mass is identified in the left ventricle",
            "Echodense mass within the LV cavity is visualized",
            "Left ventricular mass lesion of uncertain etiology",
            "A discrete intracavitary mass is visualized on the current study",
        ], None),
    }),
    "lvef": (False, {
        "lvef-hyperdynamic": ("hyperdynamic ejection fraction", [
            "LVEF is hyperdynamic on visual estimate",
            "Hyperdynamic ejection fraction is documented",
            "The ejection fraction is hyperdynamic",
            "Hyperdynamic left ventricular ejection fraction",
            "The ejection fraction is supranormal on this study",
            "The calculated ejection fraction is above the normal range",
            "LV ejection fraction exceeds the normal range by visual estimate",
            "Estimated ejection fraction is hyperdynamic on the current study",
        ], (70, 80, 0.75)),
        "lvef-normal": ("normal ejection fraction", [
            "LVEF is normal on visual estimate",
            "Normal left ventricular ejection fraction",
            "The ejection fraction is normal",
            "Normal LVEF without regional variation",
            "The ejection fraction is within normal limits",
            "The estimated ejection fraction is in the normal range",
            "Preserved ejection fraction is documented on the current study",
            "Normal estimated LVEF for age and sex",
        ], (55, 70, 0.75)),
        "lvef-low-normal": ("low normal ejection fraction", [
            "LVEF is low normal on visual estimate",
            "Low normal left ventricular ejection fraction",
            "The ejection fraction is at the lower limit of normal",
            "Borderline low ejection fraction is documented",
            "Low normal LVEF by biplane method",
            "The ejection fraction is borderline reduced",
            "The estimated ejection fraction is low normal on the current study",
            "Borderline left ventricular ejection fraction is recorded",
        ], (50, 55, 0.75)),
        "lvef-mildly-reduced": ("mildly reduced ejection fraction", [
            "LVEF is mildly reduced on visual estimate",
            "Mildly reduced left ventricular ejection fraction",
            "The ejection fraction is mildly reduced",
            "Mildly depressed ejection fraction is documented",
            "Mild reduction in LVEF by biplane method",
            "The ejection fraction is mildly impaired",
            "The estimated ejection fraction is mildly decreased on the current study",
            "Mildly decreased LVEF on visual assessment",
        ], (40, 50, 0.75)),
        "lvef-moderately-reduced": ("moderately reduced ejection fraction", [
            "LVEF is moderately reduced on visual estimate",
            "Moderately reduced left ventricular ejection fraction",
            "The ejection fraction is moderately reduced",
            "Moderately depressed ejection fraction is documented",
            "Moderate reduction in LVEF by biplane method",
            "The ejection fraction is moderately impaired",
            "The estimated ejection fraction is moderately decreased on the current study",
            "Moderately decreased LVEF on quantitative assessment",
        ], (30, 40, 0.75)),
        "lvef-severely-reduced": ("severely reduced ejection fraction", [
            "LVEF is severely reduced on visual estimate",
            "Severely reduced left ventricular ejection fraction",
            "The ejection fraction is severely reduced",
            "Severely depressed ejection fraction is documented",
            "Severe reduction in LVEF by biplane method",
            "The ejection fraction is severely impaired",
            "The estimated ejection fraction is severely decreased on the current study",
            "Profoundly reduced LVEF on quantitative assessment",
        ], (10, 25, 0.75)),
    }),
    "cardiac index": (False, {
        "cardiac-index-normal": ("normal cardiac index", [
            "Cardiac index is normal",
            "Normal cardiac index by Doppler calculation",
            "The calculated cardiac index is within normal limits",
            "Normal cardiac output and cardiac index are recorded",
            "Cardiac index is preserved on the current study",
            "Doppler derived cardiac index is normal for body surface area",
            "The cardiac index is adequate for metabolic demand",
            "Normal resting cardiac index is documented by Doppler calculation",
        ], None),
        "cardiac-index-depressed": ("depressed cardiac index", [
            "Cardiac index is depressed",
            "Reduced cardiac index by Doppler calculation",
            "The calculated cardiac index is low",
            "Depressed cardiac output and cardiac index are recorded",
            "Cardiac index is below the normal range on the current study",
            "Doppler derived cardiac index is reduced for body surface area",
            "The cardiac index is diminished relative to metabolic demand",
            "Low resting cardiac index is documented by Doppler calculation",
        ], None),
    }),
    "cardiomyopathy": (False, {
        "dilated-cardiomyopathy": ("dilated cardiomyopathy", [
            "Findings of dilated cardiomyopathy are present",
            "Findings consistent with dilated cardiomyopathy",
            "Features of a dilated cardiomyopathy are demonstrated",
            "Echocardiographic appearance of dilated cardiomyopathy",
            "Dilated cardiomyopathy physiology is present",
            "The study is consistent with dilated cardiomyopathy",
            "Appearance compatible with a dilated cardiomyopathy on the current study",
            "Overall appearance suggests a dilated cardiomyopathy",
        ], None),
        "hypertrophic-cardiomyopathy": ("hypertrophic cardiomyopathy", [
            "Findings of hypertrophic cardiomyopathy are present",
            "Findings consistent with hypertrophic cardiomyopathy",
            "Features of a hypertrophic cardiomyopathy are demonstrated",
            "Echocardiographic appearance of hypertrophic cardiomyopathy",
            "Hypertrophic cardiomyopathy physiology is present",
            "The study is consistent with hypertrophic cardiomyopathy",
            "Asymmetric septal thickening consistent with hypertrophic cardiomyopathy",
            "Overall appearance suggests a hypertrophic cardiomyopathy",
        ], None),
        "ischemic-cardiomyopathy": ("ischemic cardiomyopathy", [
            "Findings of ischemic cardiomyopathy are present",
            "Findings consistent with ischemic cardiomyopathy",
            "Features of an ischemic cardiomyopathy are demonstrated",
            "Echocardiographic appearance of ischemic cardiomyopathy",
            "Regional dysfunction consistent with ischemic cardiomyopathy",
            "The study is consistent with ischemic cardiomyopathy",
            "Regional wall motion abnormalities consistent with ischemic cardiomyopathy",
            "Overall appearance suggests an ischemic cardiomyopathy",
        ], None),
    }),
    "dyssynchrony": (False, {
        "dyssynchrony-present": ("dyssynchrony present", [
            "Left ventricular dyssynchrony is present",
            "Evidence of mechanical dyssynchrony on the current study",
            "Interventricular and intraventricular dyssynchrony are present",
            "Septal to posterior wall motion delay consistent with dyssynchrony",
            "Mechanical dyssynchrony of the left ventricle is observed",
            "Dyssynchronous left ventricular contraction pattern is demonstrated",
            "There is significant LV mechanical dyssynchrony on the current study",
            "Dyssynchronous septal motion is observed across serial cycles",
        ], None),
        "dyssynchrony-absent": ("dyssynchrony absent", [
            "No left ventricular dyssynchrony is present",
            "No evidence of mechanical dyssynchrony on the current study",
            "Synchronous left ventricular contraction pattern is observed",
            "No significant intraventricular dyssynchrony is present",
            "LV contraction is synchronous on the current study",
            "No mechanical dyssynchrony is identified in any view",
            "Ventricular activation appears synchronous by imaging criteria",
            "Absence of left ventricular dyssynchrony is noted",
        ], None),
    }),
    "ventricular septal defect": (False, {
        "muscular-vsd": ("muscular ventricular septal defect", [
            "Muscular ventricular septal defect is present",
            "A muscular VSD is present on color Doppler",
            "Small muscular ventricular septal defect with left to right shunt",
            "Color Doppler demonstrates a muscular VSD",
            "Muscular ventricular septal defect with restrictive shunt physiology",
            "There is a small muscular VSD in the apical septum",
            "A ventricular septal defect is seen in the muscular septum",
            "Muscular VSD with left to right flow is identified",
        ], None),
        "no-vsd": ("no ventricular septal defect", [
            "No ventricular septal defect is present",
            "No VSD is identified on color Doppler",
            "No evidence of a ventricular septal defect",
            "The interventricular septum is intact",
            "Intact ventricular septum without evidence of shunt",
            "No ventricular level shunt is demonstrated on color Doppler",
            "Color Doppler shows no ventricular septal defect",
            "No residual ventricular septal defect is seen on the current study",
        ], None),
    }),
    "hypertrophy pattern": (False, {
        "concentric-lvh": ("concentric left ventricular hypertrophy", [
            "Concentric left ventricular hypertrophy is present",
            "Concentric LVH pattern on the current study",
            "Concentric hypertrophy of the left ventricle",
            "Left ventricular hypertrophy in a concentric pattern",
            "Findings of concentric left ventricular hypertrophy",
            "Concentric myocardial hypertrophy is present",
            "Symmetric concentric hypertrophy of the LV walls is observed",
            "Concentric left ventricular hypertrophy is noted on the current study",
        ], None),
        "eccentric-lvh": ("eccentric left ventricular hypertrophy", [
            "Eccentric left ventricular hypertrophy is present",
            "Eccentric LVH pattern on the current study",
            "Eccentric hypertrophy of the left ventricle",
            "Left ventricular hypertrophy in an eccentric pattern",
            "Findings of eccentric left ventricular hypertrophy",
            "Eccentric myocardial hypertrophy is present",
            "Eccentric hypertrophy with associated cavity dilatation is observed",
            "Eccentric left ventricular hypertrophy is noted on the current study",
        ], None),
    }),
    "aneurysm": (False, {
        "apical-aneurysm": ("apical aneurysm", [
            "Apical aneurysm of the left ventricle",
            "Left ventricular apical aneurysm is present",
            "An apical aneurysm is present on two dimensional imaging",
            "Thin walled apical aneurysm with dyskinetic motion",
            "Aneurysmal dilatation of the left ventricular apex is demonstrated",
            "The apex is aneurysmal and dyskinetic on the current study",
            "Discrete apical aneurysm formation is identified",
            "Apical aneurysm with preserved basal contraction is observed",
        ], None),
        "no-aneurysm": ("no aneurysm", [
            "No left ventricular aneurysm is present",
            "No aneurysm is identified on the current study",
            "No evidence of left ventricular aneurysm formation",
            "No apical aneurysm is seen in any imaged view",
            "The left ventricular apex is not aneurysmal",
            "No aneurysmal segment is demonstrated on the current study",
            "Absence of ventricular aneurysm is confirmed",
            "No focal aneurysmal dilatation of the left ventricle is observed",
        ], None),
    }),
    "pcwp": (False, {
        "pcwp-elevated": ("elevated pulmonary capillary wedge pressure", [
            "Pulmonary capillary wedge pressure is elevated",
            "Elevated PCWP is estimated from Doppler indices",
            "Estimated pulmonary capillary wedge pressure is increased",
            "Elevated left sided filling pressures with increased PCWP",
            "The estimated wedge pressure is elevated on the current study",
            "Doppler estimates suggest an elevated pulmonary capillary wedge pressure",
            "Raised PCWP by noninvasive estimation is documented",
            "Elevated estimated pulmonary capillary wedge pressure on the current study",
        ], None),
        "pcwp-normal": ("normal pulmonary capillary wedge pressure", [
            "Pulmonary capillary wedge pressure is normal",
            "Normal PCWP is estimated from Doppler indices",
            "Estimated pulmonary capillary wedge pressure is within normal limits",
            "Normal left sided filling pressures with normal PCWP",
            "The estimated wedge pressure is normal on the current study",
            "Doppler estimates suggest a normal pulmonary capillary wedge pressure",
            "Normal PCWP by noninvasive estimation is documented",
            "Normal estimated pulmonary capillary wedge pressure on the current study",
        ], None),
    }),
    "cor triatriatum": (True, {
        "cor-triatriatum": ("cor triatriatum", [
            "Findings consistent with cor triatriatum",
            "A cor triatriatum membrane is visualized",
            "Cor triatriatum with an accessory atrial membrane",
            "Echocardiographic features of cor triatriatum are present",
            "Cor triatriatum sinister is present on the current study",
            "An obstructive cor triatriatum membrane is seen",
            "Appearance compatible with cor triatriatum on the current study",
            "Cor triatriatum with a fenestrated membrane is identified",
        ], None),
    }),
    "ebstein anomaly": (True, {
        "ebstein-anomaly": ("ebstein anomaly", [
            "Findings consistent with Ebstein anomaly",
            "Ebstein anomaly of the tricuspid valve",
            "Apical displacement of the tricuspid valve consistent with Ebstein anomaly",
            "Echocardiographic features of Ebstein anomaly are present",
            "Ebstein anomaly with atrialized right ventricle",
            "Appearance compatible with Ebstein anomaly on the current study",
            "Ebstein malformation of the tricuspid valve is identified",
            "Severe apical tricuspid leaflet displacement consistent with Ebstein anomaly",
        ], None),
    }),
    "lv noncompaction": (True, {
        "lv-noncompaction": ("left ventricular noncompaction", [
            "Left ventricular noncompaction is present",
            "Findings consistent with LV noncompaction",
            "Prominent trabeculations consistent with left ventricular noncompaction",
            "Noncompaction of the left ventricular myocardium",
            "Echocardiographic features of left ventricular noncompaction are present",
            "Deep intertrabecular recesses consistent with noncompaction",
            "LV noncompaction morphology is present on the current study",
            "Spongiform appearance of the myocardium consistent with noncompaction",
        ], None),
    }),
}

# Longer narrative forms, one per subcategory, kept in a second table so the
# main table stays scannable. Appended to the variant lists in build().
NARRATIVE_VARIANTS: dict[str, str] = {
    "wall-thickness-normal": "Wall thickness of the left ventricle remains normal with no evidence of hypertrophy on the current examination",
    "wall-thickness-mildly-increased": "There is mild symmetric thickening of the left ventricular walls most prominent at the basal septum",
    "wall-thickness-severely-increased": "Severe diffuse thickening of the left ventricular walls is demonstrated with markedly increased myocardial mass",
    "cavity-size-normal": "The left ventricular cavity remains normal in size throughout the study with no change from the prior examination",
    "cavity-mildly-dilated": "There is mild dilatation of the left ventricular cavity with internal dimensions just above the upper limit of normal",
    "cavity-moderately-dilated": "There is moderate dilatation of the left ventricular cavity with internal dimensions well above the upper limit of normal",
    "cavity-severely-dilated": "There is severe dilatation of the left ventricular cavity with internal dimensions far above the upper limit of normal",
    "cavity-small": "The left ventricular cavity is small with near obliteration of the chamber at end systole",
    "systolic-function-normal": "Global and regional left ventricular systolic function are normal with no wall motion abnormality identified on the current study",
    "systolic-function-hyperdynamic": "Left ventricular systolic function is hyperdynamic with near cavity obliteration at end systole on the current study",
    "systolic-function-mildly-depressed": "Global left ventricular systolic function is mildly depressed relative to the prior examination without new regional abnormality",
    "systolic-function-severely-depressed": "Global left ventricular systolic function is severely depressed relative to the prior examination across all imaged segments",
    "diastolic-function-normal": "Doppler interrogation of transmitral inflow and annular velocities demonstrates normal left ventricular diastolic function for age",
    "impaired-relaxation": "Doppler interrogation of transmitral inflow demonstrates an impaired relaxation pattern consistent with grade one diastolic dysfunction",
    "restrictive-filling": "Doppler interrogation of transmitral inflow demonstrates a restrictive filling pattern consistent with advanced diastolic dysfunction",
    "hypokinesis-mild": "There is mild hypokinesis of the left ventricular walls best appreciated in the apical four chamber view",
    "hypokinesis-mild-moderate": "There is mild to moderate hypokinesis of the left ventricular walls best appreciated in the apical four chamber view",
    "hypokinesis-moderate": "There is moderate hypokinesis of the left ventricular walls best appreciated in the apical four chamber view",
    "hypokinesis-severe": "There is severe hypokinesis of the left ventricular walls involving every imaged segment on the current study",
    "hypokinesis-global": "There is global hypokinesis of the left ventricle affecting all walls equally without regional sparing on this examination",
    "apical-intracavitary-gradient": "Continuous wave Doppler interrogation demonstrates an apical intracavitary gradient with late peaking systolic flow acceleration",
    "no-apical-intracavitary-gradient": "Continuous wave Doppler interrogation demonstrates no apical intracavitary gradient or abnormal flow acceleration at the apex",
    "midcavitary-gradient": "Continuous wave Doppler interrogation demonstrates a midcavitary gradient with systolic flow acceleration at the mid ventricular level",
    "lvot-gradient": "Continuous wave Doppler interrogation demonstrates an elevated left ventricular outflow tract gradient consistent with dynamic obstruction",
    "mural-thrombus": "A laminated mural thrombus is identified along the left ventricular wall and is unchanged from the prior examination",
    "apical-thrombus": "A discrete thrombus is identified at the left ventricular apex and is better seen following contrast administration",
    "no-thrombus-seen": "No thrombus is identified within the left ventricular cavity following the administration of echocardiographic contrast",
    "lv-mass": "A discrete echogenic mass lesion is identified within the left ventricular cavity and warrants further characterization",
    "lvef-hyperdynamic": "The left ventricular ejection fraction is hyperdynamic and exceeds the upper limit of the normal range",
    "lvef-normal": "The left ventricular ejection fraction is normal by quantitative biplane assessment on the current examination",
    "lvef-low-normal": "The left ventricular ejection fraction is at the lower limit of the normal range by quantitative assessment",
    "lvef-mildly-reduced": "The left ventricular ejection fraction is mildly reduced by quantitative biplane assessment on the current examination",
    "lvef-moderately-reduced": "The left ventricular ejection fraction is moderately reduced by quantitative biplane assessment on the current examination",
    "lvef-severely-reduced": "The left ventricular ejection fraction is severely reduced by quantitative biplane assessment on the current examination",
    "cardiac-index-normal": "The cardiac index calculated from Doppler stroke volume and heart rate is within the normal range",
    "cardiac-index-depressed": "The cardiac index calculated from Doppler stroke volume and heart rate is below the normal range",
    "dilated-cardiomyopathy": "The constellation of findings is most consistent with a dilated cardiomyopathy of nonischemic etiology",
    "hypertrophic-cardiomyopathy": "The constellation of findings is most consistent with hypertrophic cardiomyopathy with asymmetric septal involvement",
    "ischemic-cardiomyopathy": "The constellation of findings is most consistent with an ischemic cardiomyopathy with regional wall motion abnormality",
    "dyssynchrony-present": "Tissue Doppler imaging demonstrates significant mechanical dyssynchrony with septal to posterior wall motion delay",
    "dyssynchrony-absent": "Tissue Doppler imaging demonstrates synchronous ventricular contraction without evidence of mechanical dyssynchrony",
    "muscular-vsd": "Color flow Doppler demonstrates a small muscular ventricular septal defect with left to right shunting",
    "no-vsd": "Color flow Doppler demonstrates an intact interventricular septum without evidence of a septal defect",
    "concentric-lvh": "There is concentric left ventricular hypertrophy with symmetric thickening of all myocardial segments",
    "eccentric-lvh": "There is eccentric left ventricular hypertrophy with asymmetric wall thickening and associated chamber dilatation",
    "apical-aneurysm": "A thin walled apical aneurysm with dyskinetic motion is identified at the left ventricular apex",
    "no-aneurysm": "No aneurysmal dilatation or dyskinetic segment is identified in any portion of the left ventricle",
    "pcwp-elevated": "Doppler derived indices including the E to e prime ratio suggest an elevated pulmonary capillary wedge pressure",
    "pcwp-normal": "Doppler derived indices including the E to e prime ratio suggest a normal pulmonary capillary wedge pressure",
}

# Compound statements assert several subcategories at once; each is appended
# to the variant list of every member subcategory.
COMPOUND_STATEMENTS: list[tuple[str, list[str]]] = [
    (
        "Left ventricular wall thickness, cavity size, and systolic function are normal",
        ["wall-thickness-normal", "cavity-size-normal", "systolic-function-normal"],
    ),
    (
        "Normal left ventricular cavity size and systolic function",
        ["cavity-size-normal", "systolic-function-normal"],
    ),
    (
        "Normal left ventricular wall thickness and cavity size",
        ["wall-thickness-normal", "cavity-size-normal"],
    ),
]


def build() -> ConditionCatalog:
    conditions = []
    compound_by_sub: dict[str, list[str]] = {}
    for statement, subs in COMPOUND_STATEMENTS:
        for sub in subs:
            compound_by_sub.setdefault(sub, []).append(statement)
    for cname, (ood, subs) in CATALOG.items():
        cond = ConditionDef(name=cname, ood=ood)
        for sub_id, (label, variants, band) in subs.items():
            all_variants = list(variants)
            if sub_id in NARRATIVE_VARIANTS:
                all_variants.append(NARRATIVE_VARIANTS[sub_id])
            all_variants += compound_by_sub.get(sub_id, [])
            template = None
            if band is not None:
                template = LvefTemplate(lo=band[0], hi=band[1], point_fraction=band[2])
            cond.subcategories.append(
                SubcategoryDef(
                    id=sub_id,
                    condition=cname,
                    label=label,
                    variants=tuple(all_variants),
                    lvef_template=template,
                )
            )
        conditions.append(cond)
    return ConditionCatalog(name="default", conditions=conditions)


def check(catalog: ConditionCatalog) -> None:
    n_conditions = len(catalog.conditions)
    n_subs = sum(len(c.subcategories) for c in catalog.conditions)
    distinct = {v for sub in catalog.iter_subcategories() for v in sub.variants}
    lengths = [len(v.split()) for v in sorted(distinct)]
    mean = sum(lengths) / len(lengths)
    assert n_conditions >= 12, n_conditions
    assert n_subs >= 40, n_subs
    assert len(distinct) >= 400, len(distinct)
    assert min(lengths) >= 3 and max(lengths) <= 30, (min(lengths), max(lengths))
    assert 8.0 <= mean <= 14.0, mean
    # statements shared across subcategories must be declared compounds
    seen: dict[str, list[str]] = {}
    for sub in catalog.iter_subcategories():
        for v in sub.variants:
            seen.setdefault(v, []).append(sub.id)
    declared = {s: set(subs) for s, subs in COMPOUND_STATEMENTS}
    for v, owners in seen.items():
        if len(owners) > 1:
            assert set(owners) == declared.get(v), (v, owners)
    print(
        f"conditions={n_conditions} subcategories={n_subs} "
        f"variants={len(distinct)} mean_tokens={mean:.2f} "
        f"min={min(lengths)} max={max(lengths)}"
    )


def main() -> None:
    catalog = build()
    check(catalog)
    text = dump_catalog(catalog)
    parse_catalog(text)  # round-trip validation before writing
    with open(OUT_PATH, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {os.path.normpath(OUT_PATH)}")


if __name__ == "__main__":
    main()
