# -*- coding: utf-8 -*-
"""
Input Validation Utilities
اعتبارسنجی پارامترها و تنظیمات
"""

import logging

logger = logging.getLogger(__name__)


class ValidationError(ValueError):
    """Raised when a parameter or config field is invalid"""
    pass


class Validator:
    """Parameter validator"""

    @staticmethod
    def validate_integer(value, min_val=None, max_val=None, field_name="value"):
        """Validate integer value"""
        if isinstance(value, bool):
            raise ValidationError(f"{field_name} must be an integer")
        try:
            int_value = int(value)
        except (ValueError, TypeError):
            raise ValidationError(f"{field_name} must be an integer")

        if int_value != value and not isinstance(value, str):
            raise ValidationError(f"{field_name} must be an integer")

        if min_val is not None and int_value < min_val:
            raise ValidationError(f"{field_name} must be >= {min_val} (got {int_value})")

        if max_val is not None and int_value > max_val:
            raise ValidationError(f"{field_name} must be <= {max_val} (got {int_value})")

        return int_value

    @staticmethod
    def validate_positive_integer(value, field_name="value"):
        """Validate positive integer"""
        return Validator.validate_integer(value, min_val=1, field_name=field_name)

    @staticmethod
    def validate_non_negative_integer(value, field_name="value"):
        return Validator.validate_integer(value, min_val=0, field_name=field_name)

    @staticmethod
    def validate_positive_float(value, field_name="value"):
        try:
            float_value = float(value)
        except (ValueError, TypeError):
            raise ValidationError(f"{field_name} must be a number")
        if not float_value > 0:
            raise ValidationError(f"{field_name} must be positive (got {float_value})")
        return float_value

    @staticmethod
    def validate_choice(value, choices, field_name="choice"):
        """Validate value is in allowed choices"""
        if value not in choices:
            raise ValidationError(
                f"{field_name} must be one of {', '.join(map(str, choices))} (got {value!r})"
            )
        return True

    @staticmethod
    def validate_vertex(value, n, field_name="vertex"):
        """Validate a 0-based vertex id"""
        return Validator.validate_integer(value, min_val=0, max_val=n - 1, field_name=field_name)


def validate_config_data(config_data, rules):
    """
    Validate multiple config fields at once

    Usage:
        rules = {
            'trials': [('positive_integer',)],
            'format': [('choice', {'choices': ('csv', 'json')})],
        }
        errors = validate_config_data(cfg, rules)

    Args:
        config_data: Dictionary of values
        rules: Dictionary of validation rules

    Returns:
        List of error messages (empty if valid)
    """
    validator = Validator()
    errors = []

    for field, field_rules in rules.items():
        value = config_data.get(field)

        for rule in field_rules:
            try:
                rule_name = rule[0]
                rule_args = rule[1] if len(rule) > 1 else {}

                method_name = f'validate_{rule_name}'
                if hasattr(validator, method_name):
                    method = getattr(validator, method_name)
                    method(value, field_name=field, **rule_args)
                else:
                    logger.warning(f"Unknown validation rule: {rule_name}")

            except ValidationError as e:
                errors.append(str(e))
                break  # Stop validating this field on first error

    return errors
